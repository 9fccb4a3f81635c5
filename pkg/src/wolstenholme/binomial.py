"""The central binomial coefficient C(2p-1, p-1) modulo p^k.

Two product expansions are computed in the compiled sweep of
:func:`wolstenholme.harmonic.prime_sums`:

    upward    prod_{i=1}^{p-1} (1 + p/i)
    downward  (-1)^(p-1) prod_{i=1}^{p-1} (1 - 2p/i)

and an exact big-integer value serves as the oracle for small p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .checks import CheckOutcome, congruence
from .errors import PrimeTooSmall, RangeTooLarge
from .harmonic import PrimeSums, _check_k, elem_sym, prime_sums
from .modmath import Residue, Valuation, make_modulus, valuation

EXACT_LIMIT = 2000


@dataclass(frozen=True)
class CentralBinomial:
    p: int
    k: int
    value: Residue
    wolstenholme_level: Valuation

    @classmethod
    def from_value(cls, p: int, k: int, value: int) -> "CentralBinomial":
        m = make_modulus(p, k)
        return cls(p, k, m(value), valuation(m(value - 1)))


def _require_odd(p: int):
    if p < 3:
        raise PrimeTooSmall(f"p={p}: central binomial products need p >= 3")


def binom_upward(p: int, k: int, sums: PrimeSums | None = None) -> CentralBinomial:
    _require_odd(p)
    _check_k(p, k)
    sums = sums or prime_sums(p)
    return CentralBinomial.from_value(p, k, sums.upward)


def binom_downward(p: int, k: int, sums: PrimeSums | None = None) -> CentralBinomial:
    _require_odd(p)
    _check_k(p, k)
    sums = sums or prime_sums(p)
    return CentralBinomial.from_value(p, k, sums.downward)


def binom_exact_mod(p: int, k: int) -> Residue:
    if p > EXACT_LIMIT:
        raise RangeTooLarge(f"exact oracle limited to p <= {EXACT_LIMIT}")
    m = make_modulus(p, k)
    return m(math.comb(2 * p - 1, p - 1))


def proof_step_combination(
    p: int, sums: PrimeSums | None = None, e: tuple[int, int, int] | None = None
) -> CheckOutcome:
    """C = 1 + 2p^2 e2 - 2p^3 e3 + 6p^4 e4  (mod p^5).

    This is (2 * upward + downward) / 3 truncated at p^5.  ``e`` overrides
    (e2, e3, e4) for mutation tests.
    """
    if p < 7:
        raise PrimeTooSmall("proof-step combination needs p >= 7")
    sums = sums or prime_sums(p)
    if e is None:
        e = tuple(elem_sym(p, r, 5, sums).value.value for r in (2, 3, 4))
    e2, e3, e4 = e
    rhs = 1 + 2 * p**2 * e2 - 2 * p**3 * e3 + 6 * p**4 * e4
    return congruence("proof_step_combination", p, 5, sums.upward, rhs)


def check_eq_e4(p: int, sums: PrimeSums | None = None) -> CheckOutcome:
    """C = 1 - p^2 H2  (mod p^5)."""
    if p < 7:
        raise PrimeTooSmall("the mod p^5 expansion needs p >= 7")
    sums = sums or prime_sums(p)
    return congruence("eq_e4", p, 5, sums.upward, 1 - p**2 * sums.h2)
