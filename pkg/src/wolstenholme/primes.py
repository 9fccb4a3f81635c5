"""Prime enumeration over scan ranges with an odd-only segmented sieve."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RangeTooLarge

MAX_SIEVE = 1 << 21
SEGMENT = 1 << 16  # odd numbers per segment


@dataclass(frozen=True)
class PrimeRange:
    lo: int
    hi: int

    def __post_init__(self):
        if self.hi > MAX_SIEVE:
            raise RangeTooLarge(f"hi={self.hi} exceeds 2^21")
        if not 2 <= self.lo < self.hi:
            raise ValueError(f"need 2 <= lo < hi, got [{self.lo}, {self.hi})")


def _base_primes(limit: int) -> np.ndarray:
    """Odd primes <= limit via a plain sieve."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    flags[4::2] = False
    for q in range(3, math.isqrt(limit) + 1, 2):
        if flags[q]:
            flags[q * q :: 2 * q] = False
    return np.flatnonzero(flags)[1:]


def _sieve_segment(start: int, count: int, base: np.ndarray) -> np.ndarray:
    """Primes among the odd numbers start, start+2, ..., start+2(count-1)."""
    mask = np.ones(count, dtype=bool)
    end = start + 2 * count
    for q in base:
        q = int(q)
        q2 = q * q
        if q2 >= end:
            break
        first = max(q2, -(-start // q) * q)
        if first % 2 == 0:
            first += q
        mask[(first - start) // 2 :: q] = False
    return start + 2 * np.flatnonzero(mask)


def primes_in(rng: PrimeRange | tuple[int, int]) -> list[int]:
    """All primes p with lo <= p < hi, ascending."""
    if not isinstance(rng, PrimeRange):
        rng = PrimeRange(*rng)
    lo, hi = rng.lo, rng.hi
    out: list[int] = [2] if lo <= 2 < hi else []
    base = _base_primes(math.isqrt(hi) + 1)
    start = max(lo, 3) | 1
    while start < hi:
        count = min(SEGMENT, (hi - start + 1) // 2)
        found = _sieve_segment(start, count, base)
        # 1 is odd but not prime
        out.extend(int(x) for x in found if x > 1)
        start += 2 * count
    return out


def count_primes(rng: PrimeRange | tuple[int, int]) -> int:
    return len(primes_in(rng))
