"""Bernoulli numbers, exactly and as residues through prime power sums.

Convention: B_1 = -1/2.  It is the only choice under which

    S_m(p) = sum_{i=1}^{p-1} i^m = sum_{i=1}^{m+1} (1/i) C(m, i-1) p^i B_{m+1-i}

holds (at m = 1: 1 + ... + (p-1) = p B_1 + p^2/2).  Residues of B_m modulo p
and p^2 are read off as S_m(p)/p, which is legitimate when every discarded
term of the formula is p-integral and divisible by the target power; see
:func:`bern_mod_via_sum` for the exact conditions enforced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple

from . import _montgomery
from .errors import DivisibilityViolation, IndexNotSupported, PrimeTooSmall, RangeTooLarge
from .modmath import Residue, make_modulus

EXACT_LIMIT = 400

_table: list[Fraction] = [Fraction(1)]


def bern_exact(n: int) -> Fraction:
    """B_n from sum_{j=0}^{n} C(n+1, j) B_j = 0, cached across calls."""
    if not 0 <= n <= EXACT_LIMIT:
        raise RangeTooLarge(f"exact Bernoulli numbers limited to 0..{EXACT_LIMIT}")
    while len(_table) <= n:
        m = len(_table)
        if m > 1 and m % 2 == 1:
            _table.append(Fraction(0))
            continue
        acc = sum(comb(m + 1, j) * _table[j] for j in range(m) if _table[j])
        _table.append(-acc / (m + 1))
    return _table[n]


def reduce_rational(x: Fraction, modulus: int) -> int:
    """Image of a rational with unit denominator in Z/modulus."""
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


def power_sum_formula(m: int, p: int) -> Fraction:
    """Right-hand side of the Bernoulli power-sum formula, in exact rationals."""
    return sum(
        (Fraction(comb(m, i - 1), i) * p**i * bern_exact(m + 1 - i) for i in range(1, m + 2)),
        Fraction(0),
    )


@dataclass(frozen=True)
class BernoulliResidue:
    m: int
    p: int
    j: int
    value: Residue


def power_sum_mod(m: int, p: int, k: int) -> Residue:
    """S_m(p) = sum_{i=1}^{p-1} i^m mod p^k by modular powering."""
    if m < 1:
        raise ValueError("power-sum index must be >= 1")
    if not 1 <= k <= 4:
        raise ValueError("power sums are provided modulo p^k for k <= 4")
    mod = make_modulus(p, k)
    (s,) = _montgomery.power_sums(p, k, [m])
    return mod(s)


def big_index(p: int) -> int:
    """p^3 - p^2 - 2 = phi(p^3) - 2, so i^{-2} = i^{big_index} mod p^3."""
    return p**3 - p**2 - 2


def _supported(m: int, p: int, j: int) -> str | None:
    if p < 7:
        return "p must be >= 7"
    if j not in (1, 2):
        return "precision j must be 1 or 2"
    if m < 2 or m % 2:
        return "m must be even and >= 2"
    if m % (p - 1) == 0:
        return "(p-1) | m: p divides the denominator of B_m"
    if j == 2 and (m - 2) % (p - 1) == 0:
        # the p^3/3 C(m,2) B_{m-2} term then only vanishes mod p^2
        return "(p-1) | (m-2): S_m/p determines B_m only mod p"
    return None


def _divide_by_p(s: int, p: int, j: int, m: int) -> int:
    if s % p:
        raise DivisibilityViolation(f"p={p} does not divide S_{m}(p) = {s} mod p^{j + 1}")
    return s // p % p**j


def bern_mod_via_sum(m: int, p: int, j: int, s: int | None = None) -> BernoulliResidue:
    """B_m mod p^j as S_m(p)/p.

    Accepted for even m with (p-1) not dividing m (and, for j = 2, not
    dividing m-2 either); under those conditions every other term of the
    power-sum formula is divisible by p^(j+1).  ``s`` may supply S_m(p) mod
    p^(j+1) when the caller already has it.
    """
    reason = _supported(m, p, j)
    if reason:
        raise IndexNotSupported(f"B_{m} mod {p}^{j}: {reason}")
    if s is None:
        s = power_sum_mod(m, p, j + 1).value
    value = _divide_by_p(s % p ** (j + 1), p, j, m)
    return BernoulliResidue(m, p, j, make_modulus(p, j)(value))


class TheoremInputs(NamedTuple):
    bern_p3: Residue  # B_{p-3} mod p
    bern_p5: Residue | None  # B_{p-5} mod p, None below p = 11
    bern_big: Residue  # B_{p^3-p^2-2} mod p^2


def theorem_inputs(p: int) -> TheoremInputs:
    if p < 7:
        raise PrimeTooSmall("Bernoulli theorem inputs need p >= 7")
    M = big_index(p)
    s5, s3, s_big = _montgomery.bernoulli_sums(p, 3)
    b3 = bern_mod_via_sum(p - 3, p, 1, s3).value
    big = bern_mod_via_sum(M, p, 2, s_big).value
    b5 = bern_mod_via_sum(p - 5, p, 1, s5).value if p >= 11 else None
    return TheoremInputs(b3, b5, big)


def bern_big_mod_p3(p: int) -> Residue:
    """B_M mod p^3 for M = p^3 - p^2 - 2.

    One digit beyond S_M/p the formula's third term survives:
    S_M = p B_M + p^3 C(M,2)/3 B_{M-2}  (mod p^4), and B_{M-2} mod p is
    again S_{M-2}/p.
    """
    if p < 7:
        raise PrimeTooSmall("needs p >= 7")
    M = big_index(p)
    s_m, s_m2 = _montgomery.power_sums(p, 4, [M, M - 2])
    b_m2 = bern_mod_via_sum(M - 2, p, 1, s_m2 % p**2).value.value
    n3 = p**3
    coeff = M * (M - 1) % n3 * pow(6, -1, n3) % n3
    head = _divide_by_p(s_m, p, 3, M)
    return make_modulus(p, 3)(head - p * p * coeff * b_m2)
