"""Power sums of inverses and elementary symmetric sums of {1/1, ..., 1/(p-1)}.

H_j(p, k) = sum_{i=1}^{p-1} i^{-j} mod p^k for j <= 4, and e_r the sum over
strictly increasing r-tuples of 1/(i_1 ... i_r), obtained from the H_j by
Newton's identities.  Everything for one prime comes out of a single compiled
sweep at the largest exponent the modulus bound allows, cached per process and
reduced on demand.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import _montgomery
from .checks import CheckOutcome, congruence
from .errors import PrimeTooSmall, RangeTooLarge
from .modmath import Residue, inv, make_modulus, max_exponent

MAX_POWER = 4
BRUTEFORCE_LIMIT = 31


@dataclass(frozen=True)
class PrimeSums:
    """Raw per-prime sums modulo p^k, k = max_exponent(p).

    ``reflected`` is sum_i 1/((p-i) i^3); ``upward``/``downward`` are the two
    product expansions of C(2p-1, p-1).
    """

    p: int
    k: int
    h1: int
    h2: int
    h3: int
    h4: int
    upward: int
    downward: int
    reflected: int

    def h(self, j: int) -> int:
        return (self.h1, self.h2, self.h3, self.h4)[j - 1]

    def replace(self, **changes) -> "PrimeSums":
        return dataclasses.replace(self, **changes)


@lru_cache(maxsize=256)
def prime_sums(p: int) -> PrimeSums:
    if p < 3:
        raise PrimeTooSmall(f"p={p}: need an odd prime")
    k = max_exponent(p)
    make_modulus(p, k)  # primality
    return PrimeSums(p, k, **_montgomery.harmonic_pass(p, k))


@dataclass(frozen=True)
class HarmonicSum:
    p: int
    j: int
    k: int
    value: Residue


@dataclass(frozen=True)
class ElemSym:
    p: int
    r: int
    k: int
    value: Residue


def _check_k(p: int, k: int):
    m = make_modulus(p, k)
    if k > max_exponent(p):
        raise RangeTooLarge(f"{p}^{k} exceeds the cached precision")
    return m


def harmonic_sum(p: int, j: int, k: int, sums: PrimeSums | None = None) -> HarmonicSum:
    if not 1 <= j <= MAX_POWER:
        raise ValueError(f"power j={j} outside 1..{MAX_POWER}")
    if p < 3:
        raise PrimeTooSmall(f"p={p}: harmonic sums need p >= 3")
    m = _check_k(p, k)
    sums = sums or prime_sums(p)
    return HarmonicSum(p, j, k, m(sums.h(j)))


def _min_prime_for(r: int) -> int:
    return 7 if r == 4 else 5


def elem_sym(p: int, r: int, k: int, sums: PrimeSums | None = None) -> ElemSym:
    """e_r via Newton: r e_r = sum_{i=1}^r (-1)^(i-1) e_{r-i} H_i."""
    if not 1 <= r <= MAX_POWER:
        raise ValueError(f"order r={r} outside 1..{MAX_POWER}")
    if p < _min_prime_for(r):
        raise PrimeTooSmall(f"e_{r} needs p >= {_min_prime_for(r)} (division by {r})")
    m = _check_k(p, k)
    sums = sums or prime_sums(p)
    h = [None] + [m(sums.h(j)) for j in range(1, r + 1)]
    e = [m(1)]
    for n in range(1, r + 1):
        acc = m(0)
        for i in range(1, n + 1):
            term = e[n - i] * h[i]
            acc = acc + term if i % 2 == 1 else acc - term
        e.append(acc / n)
    return ElemSym(p, r, k, e[r])


def elem_sym_bruteforce(p: int, r: int, k: int) -> ElemSym:
    """Direct summation over increasing index tuples; the oracle for elem_sym."""
    if p > BRUTEFORCE_LIMIT:
        raise RangeTooLarge(f"brute force is O(p^r); p={p} > {BRUTEFORCE_LIMIT}")
    if not 1 <= r <= MAX_POWER:
        raise ValueError(f"order r={r} outside 1..{MAX_POWER}")
    m = make_modulus(p, k)
    inverses = [inv(m(i)).value for i in range(1, p)]
    n = m.modulus
    total = 0
    for combo in combinations(inverses, r):
        prod = 1
        for x in combo:
            prod = prod * x % n
        total += prod
    return ElemSym(p, r, k, m(total))


def telescoped_chain(p: int, sums: PrimeSums | None = None) -> CheckOutcome:
    """2 H1 = -p H2 - p^2 H3 + p^3 T  (mod p^4), T = sum 1/((p-i) i^3)."""
    if p < 7:
        raise PrimeTooSmall("telescoped chain needs p >= 7")
    sums = sums or prime_sums(p)
    lhs = 2 * sums.h1
    rhs = -p * sums.h2 - p**2 * sums.h3 + p**3 * sums.reflected
    return congruence("telescoped_chain", p, 4, lhs, rhs)


def telescoped_tail(p: int, sums: PrimeSums | None = None) -> CheckOutcome:
    """T = -H4 (mod p), the reduction that closes the chain."""
    if p < 7:
        raise PrimeTooSmall("telescoped chain needs p >= 7")
    sums = sums or prime_sums(p)
    return congruence("telescoped_tail", p, 1, sums.reflected, -sums.h4)


def check_six_e3(p: int, sums: PrimeSums | None = None) -> CheckOutcome:
    """6 e_3 = H1^3 - 3 H1 H2 + 2 H3 vanishes mod p^2."""
    e3 = elem_sym(p, 3, 2, sums).value
    return congruence("six_e3_mod_p2", p, 2, 6 * e3.value, 0)


def check_e4(p: int, sums: PrimeSums | None = None) -> CheckOutcome:
    """Doubling every index permutes the 4-subsets mod p, so 2^4 e_4 = e_4."""
    e4 = elem_sym(p, 4, 1, sums).value
    return congruence("e4_mod_p", p, 1, e4.value, 0)
