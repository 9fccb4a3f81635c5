"""Cross-validation of every fast path against an independent exact route."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import _montgomery, modmath
from .bernoulli import (
    bern_exact,
    bern_mod_via_sum,
    power_sum_formula,
    reduce_rational,
)
from .binomial import EXACT_LIMIT, binom_downward, binom_exact_mod, binom_upward
from .harmonic import BRUTEFORCE_LIMIT, elem_sym, elem_sym_bruteforce, harmonic_sum
from .primes import primes_in

BERNOULLI_PRIMES = (7, 11, 13, 31)
FORMULA_PRIMES = (5, 7, 11, 13)
BINOMIAL_ORACLE_LIMIT = 500


@dataclass
class FamilyResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name:<24} {self.cases} cases"
        if self.failures:
            text += f", {len(self.failures)} mismatches (first: {self.failures[0]})"
        return text


Case = tuple[str, Callable[[], bool]]


def _primes(lo: int, hi: int) -> list[int]:
    return primes_in((lo, hi + 1)) if hi >= lo else []


def batch_inverse_cases(max_p: int) -> Iterator[Case]:
    for p in _primes(3, min(max_p, 400)):
        for k in (2, 6):
            m = modmath.make_modulus(p, k)

            def case(p=p, k=k, m=m):
                xs = [m(i) for i in range(1, p)]
                batch = modmath.batch_inv(xs)
                single = [modmath.inv(x) for x in xs]
                kernel = _montgomery.inverse_values(p, k)[1:]
                return batch == single and [r.value for r in batch] == kernel

            yield f"1..{p - 1} mod {p}^{k}", case


def binomial_cases(max_p: int) -> Iterator[Case]:
    for p in _primes(5, min(max_p, BINOMIAL_ORACLE_LIMIT, EXACT_LIMIT)):
        for k in range(1, 7):

            def case(p=p, k=k):
                exact = binom_exact_mod(p, k)
                return binom_upward(p, k).value == exact == binom_downward(p, k).value

            yield f"C(2p-1,p-1) p={p} k={k}", case


def harmonic_cases(max_p: int) -> Iterator[Case]:
    for p in _primes(3, min(max_p, 200)):
        for k in (1, 3, 6):
            n = p**k

            def case(p=p, k=k, n=n):
                invs = [pow(i, -1, n) for i in range(1, p)]
                return all(
                    harmonic_sum(p, j, k).value.value == sum(x**j for x in invs) % n
                    for j in range(1, 5)
                )

            yield f"H_j p={p} k={k}", case


def newton_cases(max_p: int) -> Iterator[Case]:
    for p in _primes(7, min(max_p, BRUTEFORCE_LIMIT)):
        for r in range(1, 5):
            for k in range(1, 4):

                def case(p=p, r=r, k=k):
                    return elem_sym(p, r, k).value == elem_sym_bruteforce(p, r, k).value

                yield f"e_{r} p={p} k={k}", case


def bernoulli_cases(max_p: int) -> Iterator[Case]:
    for p in BERNOULLI_PRIMES:
        if p > max_p:
            continue
        for m in range(2, 61, 2):
            if m % (p - 1) == 0:
                continue

            def case(p=p, m=m):
                want = reduce_rational(bern_exact(m), p)
                return bern_mod_via_sum(m, p, 1).value.value == want

            yield f"B_{m} mod {p}", case

    def big_case():
        want = reduce_rational(bern_exact(292), 49)
        return bern_mod_via_sum(292, 7, 2).value.value == want

    yield "B_292 mod 49", big_case


def formula_cases(max_p: int) -> Iterator[Case]:
    for p in FORMULA_PRIMES:
        for m in range(1, 21):

            def case(p=p, m=m):
                return power_sum_formula(m, p) == sum(i**m for i in range(1, p))

            yield f"S_{m}({p}) exact", case


def parity_cases(max_p: int) -> Iterator[Case]:
    for n in range(3, 400, 2):
        yield f"B_{n} = 0", lambda n=n: bern_exact(n) == 0


FAMILIES: dict[str, Callable[[int], Iterator[Case]]] = {
    "batch_inverse": batch_inverse_cases,
    "binomial_products": binomial_cases,
    "harmonic_kernel": harmonic_cases,
    "newton_vs_bruteforce": newton_cases,
    "bernoulli_via_sums": bernoulli_cases,
    "power_sum_formula": formula_cases,
    "bernoulli_parity": parity_cases,
}


def run_family(name: str, max_p: int) -> FamilyResult:
    result = FamilyResult(name)
    for label, case in FAMILIES[name](max_p):
        result.cases += 1
        try:
            ok = case()
        except Exception as exc:  # a crash is a mismatch, not an abort
            ok = False
            label = f"{label} ({type(exc).__name__}: {exc})"
        if not ok:
            result.failures.append(label)
    return result


def run_oracle(max_p: int = 200) -> list[FamilyResult]:
    if not 7 <= max_p <= EXACT_LIMIT:
        raise ValueError(f"max_p must lie in 7..{EXACT_LIMIT}")
    return [run_family(name, max_p) for name in FAMILIES]


def all_passed(results: list[FamilyResult]) -> bool:
    return all(r.passed for r in results)

