from __future__ import annotations

from dataclasses import dataclass

from .modmath import Residue, make_modulus


@dataclass(frozen=True)
class CheckOutcome:
    """One named congruence, with both sides kept for diagnostics."""

    name: str
    p: int
    modulus_exponent: int
    passed: bool
    lhs: Residue
    rhs: Residue

    def describe(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}  {self.name:<28} mod {self.p}^{self.modulus_exponent}  "
            f"lhs={self.lhs.value} rhs={self.rhs.value}"
        )


def congruence(name: str, p: int, k: int, lhs: int, rhs: int) -> CheckOutcome:
    """Compare two integers modulo p^k."""
    m = make_modulus(p, k)
    a, b = m(lhs), m(rhs)
    return CheckOutcome(name, p, k, a == b, a, b)
