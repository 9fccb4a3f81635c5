"""Executable theorem statements and the per-prime report.

Every equivalence is checked as boolean equality of its conditions, never as
truth of any one of them: no statement here assumes there are no further
Wolstenholme primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from . import _montgomery
from .bernoulli import TheoremInputs, bern_big_mod_p3, theorem_inputs
from .binomial import check_eq_e4, proof_step_combination
from .checks import CheckOutcome, congruence
from .errors import IndexNotSupported, ModulusOverflow, PrimeTooSmall
from .harmonic import (
    PrimeSums,
    check_e4,
    check_six_e3,
    prime_sums,
    telescoped_chain,
    telescoped_tail,
)
from .modmath import Residue, Valuation, make_modulus, max_exponent, valuation

REPORT_EXPONENT = 6


class Core(NamedTuple):
    """C(2p-1, p-1), H1, H2 modulo p^k from the fused scan sweep."""

    p: int
    k: int
    binom: int
    h1: int
    h2: int


@lru_cache(maxsize=256)
def core_sums(p: int) -> Core:
    k = max_exponent(p)
    make_modulus(p, k)
    h1, h2, c = _montgomery.scan_sums(p, k)
    return Core(p, k, c, h1, h2)


class Conditions(NamedTuple):
    a: bool
    b: bool
    c: bool
    d: bool

    @property
    def consistent(self) -> bool:
        return self.a == self.b == self.c == self.d

    def any(self) -> bool:
        return self.a or self.b or self.c or self.d


def _level(value: int, p: int, k: int) -> Valuation:
    return valuation(value % p**k, make_modulus(p, k))


def check_classical(p: int, core: Core | None = None) -> list[CheckOutcome]:
    if p < 5:
        raise PrimeTooSmall(f"p={p}: the classical congruences need p >= 5")
    core = core or core_sums(p)
    return [
        congruence("classical_binomial_mod_p3", p, 3, core.binom, 1),
        congruence("classical_h1_mod_p2", p, 2, core.h1, 0),
        congruence("classical_h2_mod_p", p, 1, core.h2, 0),
    ]


def check_leudesdorf(p: int, sums: PrimeSums | None = None) -> list[CheckOutcome]:
    """Odd power sums vanish mod p^2 and even ones mod p, for 2k < p-1, 2k <= 4."""
    if p < 7:
        raise PrimeTooSmall(f"p={p}: the lemma needs p >= 7")
    sums = sums or prime_sums(p)
    out = []
    for half in (1, 2):
        if not 2 * half < p - 1:
            break
        odd, even = 2 * half - 1, 2 * half
        out.append(congruence(f"leudesdorf_h{odd}_mod_p2", p, 2, sums.h(odd), 0))
        out.append(congruence(f"leudesdorf_h{even}_mod_p", p, 1, sums.h(even), 0))
    return out


def theorem1_conditions(
    p: int, core: Core | None = None, bern: TheoremInputs | None = None
) -> Conditions:
    if p < 7:
        raise PrimeTooSmall("Theorem-level conditions need p >= 7")
    core = core or core_sums(p)
    bern = bern or theorem_inputs(p)
    return Conditions(
        a=_level(core.binom - 1, p, 4).at_least(4),
        b=_level(core.h1, p, 3).at_least(3),
        c=_level(core.h2, p, 2).at_least(2),
        d=bern.bern_p3.is_zero(),
    )


def theorem2_conditions(
    p: int, core: Core | None = None, bern: TheoremInputs | None = None
) -> Conditions:
    if p < 7:
        raise PrimeTooSmall("Theorem-level conditions need p >= 7")
    core = core or core_sums(p)
    bern = bern or theorem_inputs(p)
    return Conditions(
        a=_level(core.binom - 1, p, 5).at_least(5),
        b=_level(core.h1, p, 4).at_least(4),
        c=_level(core.h2, p, 3).at_least(3),
        d=bern.bern_big.is_zero(),
    )


def check_final_identity(
    p: int, core: Core | None = None, bern_big: int | None = None
) -> CheckOutcome:
    """C = 1 - p^3 B_M  (mod p^5), M = p^3 - p^2 - 2."""
    if p < 7:
        raise PrimeTooSmall("the final identity needs p >= 7")
    core = core or core_sums(p)
    if bern_big is None:
        bern_big = theorem_inputs(p).bern_big.value
    return congruence("final_identity", p, 5, core.binom, 1 - p**3 * bern_big)


def check_helou_terjanian(
    p: int,
    core: Core | None = None,
    bern: TheoremInputs | None = None,
    bern_big_p3: int | None = None,
) -> list[CheckOutcome]:
    """The mod p^6 / p^5 / p^4 expansions in B_M, B_{p-3}, B_{p-5}."""
    if p < 11:
        raise IndexNotSupported(f"p={p}: B_(p-5) is needed, so p >= 11")
    core = core or core_sums(p)
    bern = bern or theorem_inputs(p)
    if bern_big_p3 is None:
        bern_big_p3 = bern_big_mod_p3(p).value
    b3, b5, bm = bern.bern_p3.value, bern.bern_p5.value, bern_big_p3

    def frac(num: int, den: int, k: int) -> int:
        n = p**k
        return num * pow(den, -1, n) % n

    n6 = p**6
    c_rhs = 1 - p**3 * bm + frac(1, 3, 6) * p**5 * b3 - frac(6, 5, 6) * p**5 * b5
    h1_rhs = -frac(1, 2, 5) * p**2 * bm + frac(1, 6, 5) * p**4 * b3 - frac(1, 5, 5) * p**4 * b5
    h2_rhs = p * bm - frac(1, 3, 4) * p**3 * b3 + frac(4, 5, 4) * p**3 * b5
    return [
        congruence("helou_terjanian_binomial", p, 6, core.binom, c_rhs % n6),
        congruence("helou_terjanian_h1", p, 5, core.h1, h1_rhs),
        congruence("helou_terjanian_h2", p, 4, core.h2, h2_rhs),
    ]


@dataclass
class PrimeReport:
    p: int
    level_a: Valuation
    level_b: Valuation
    level_c: Valuation
    bern_p3: Residue
    bern_p5: Residue | None
    bern_big: Residue
    is_wolstenholme: bool
    thm1_consistent: bool
    thm2_consistent: bool
    check_failures: list[str]
    checks: list[CheckOutcome] = field(default_factory=list, repr=False)
    deep: bool = False

    def to_record(self) -> dict:
        return {
            "p": self.p,
            "v_binom_minus_1": self.level_a.v,
            "v_binom_saturated": self.level_a.saturated,
            "v_h1": self.level_b.v,
            "v_h2": self.level_c.v,
            "bern_p3": self.bern_p3.value,
            "bern_p5": None if self.bern_p5 is None else self.bern_p5.value,
            "bern_big": self.bern_big.value,
            "wolstenholme": self.is_wolstenholme,
            "thm1_consistent": self.thm1_consistent,
            "thm2_consistent": self.thm2_consistent,
            "failures": list(self.check_failures),
        }

    @property
    def ok(self) -> bool:
        return self.thm1_consistent and self.thm2_consistent and not self.check_failures


def deep_checks(p: int, core: Core, bern: TheoremInputs) -> list[CheckOutcome]:
    """Every identity of the proof and the closing expansions, for one prime."""
    sums = prime_sums(p)
    out = [
        congruence("binomial_upward_vs_ratio", p, 6, sums.upward, core.binom),
        congruence("binomial_upward_vs_downward", p, 6, sums.upward, sums.downward),
        congruence("h1_paired_vs_direct", p, 6, core.h1, sums.h1),
        congruence("h2_paired_vs_direct", p, 6, core.h2, sums.h2),
    ]
    out += check_leudesdorf(p, sums)
    out.append(check_eq_e4(p, sums))
    out.append(proof_step_combination(p, sums))
    out.append(check_six_e3(p, sums))
    out.append(check_e4(p, sums))
    out.append(telescoped_chain(p, sums))
    out.append(telescoped_tail(p, sums))
    out.append(check_final_identity(p, core, bern.bern_big.value))
    if p >= 11:
        out += check_helou_terjanian(p, core, bern)
    return out


def build_report(p: int, deep: bool = False) -> PrimeReport:
    """Fast path always; the full suite when asked or when any Theorem-1 condition holds."""
    if p < 7:
        raise PrimeTooSmall(f"p={p}: reports need p >= 7")
    make_modulus(p, 1)
    if max_exponent(p) < REPORT_EXPONENT:
        raise ModulusOverflow(f"p={p}: p^6 exceeds the supported modulus width")
    core = core_sums(p)
    bern = theorem_inputs(p)
    t1 = theorem1_conditions(p, core, bern)
    t2 = theorem2_conditions(p, core, bern)
    checks = check_classical(p, core)
    escalate = deep or t1.any() or t2.any()
    if escalate:
        checks += deep_checks(p, core, bern)
    level_a = _level(core.binom - 1, p, 6)
    return PrimeReport(
        p=p,
        level_a=level_a,
        level_b=_level(core.h1, p, 5),
        level_c=_level(core.h2, p, 4),
        bern_p3=bern.bern_p3,
        bern_p5=bern.bern_p5,
        bern_big=bern.bern_big,
        is_wolstenholme=level_a.at_least(4),
        thm1_consistent=t1.consistent,
        thm2_consistent=t2.consistent,
        check_failures=[c.name for c in checks if not c.passed],
        checks=checks,
        deep=escalate,
    )
