"""Exact arithmetic in Z/p^kZ for a prime p and 1 <= k <= 6.

Residues are least nonnegative representatives backed by Python integers, so
products are exact at any width; the O(p) loops that need speed live in
:mod:`wolstenholme._montgomery` and agree with this layer value for value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ExponentOutOfRange, ModulusOverflow, NotAUnit, NotPrime

MAX_EXPONENT = 6
# Montgomery reduction in the kernels works on 256-bit intermediates, which
# stays exact for moduli below 2^127.
MODULUS_BOUND = 1 << 127

# Deterministic for every n < 3.3e24 (Sorenson and Webster).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise ValueError(f"primality test is only deterministic below {_MR_LIMIT}")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ModulusPower:
    p: int
    k: int
    modulus: int
    powers: tuple[int, ...] = field(repr=False, compare=False)

    def __call__(self, value: int) -> "Residue":
        return Residue(value % self.modulus, self)

    def reduce(self, k: int) -> "ModulusPower":
        """The same prime at a smaller exponent."""
        return make_modulus(self.p, k)


@lru_cache(maxsize=4096)
def make_modulus(p: int, k: int) -> ModulusPower:
    if not 1 <= k <= MAX_EXPONENT:
        raise ExponentOutOfRange(f"exponent k={k} outside 1..{MAX_EXPONENT}")
    if p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    modulus = p**k
    if modulus >= MODULUS_BOUND:
        raise ModulusOverflow(f"{p}^{k} does not fit below 2^127")
    return ModulusPower(p, k, modulus, tuple(p**j for j in range(k + 1)))


def max_exponent(p: int) -> int:
    """Largest k <= 6 with p^k below the modulus bound."""
    k = MAX_EXPONENT
    while p**k >= MODULUS_BOUND:
        k -= 1
    return k


@dataclass(frozen=True, slots=True)
class Residue:
    value: int
    modulus: ModulusPower

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"modulus mismatch: {self.modulus.p}^{self.modulus.k} "
                    f"vs {other.modulus.p}^{other.modulus.k}"
                )
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, value: int) -> "Residue":
        return Residue(value % self.modulus.modulus, self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._new(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def __pow__(self, e: int):
        return power(self, e)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.modulus(other)
        return mul(self, inv(other))

    def __int__(self) -> int:
        return self.value

    def is_zero(self) -> bool:
        return self.value == 0

    def lift(self, k: int) -> "Residue":
        """Reinterpret the representative modulo p^k (k >= current exponent)."""
        return Residue(self.value, make_modulus(self.modulus.p, k))

    def reduce(self, k: int) -> "Residue":
        m = make_modulus(self.modulus.p, k)
        return Residue(self.value % m.modulus, m)

    def __repr__(self) -> str:
        return f"Residue({self.value} mod {self.modulus.p}^{self.modulus.k})"


def residue(value: int, m: ModulusPower) -> Residue:
    return Residue(value % m.modulus, m)


def mul(a: Residue, b: Residue) -> Residue:
    return a * b


def inv(a: Residue) -> Residue:
    m = a.modulus
    if a.value % m.p == 0:
        raise NotAUnit(f"{a.value} is not a unit modulo {m.p}^{m.k}")
    return Residue(pow(a.value, -1, m.modulus), m)


def power(a: Residue, e: int) -> Residue:
    """Square-and-multiply; ``power(a, 0)`` is 1 even for a = 0."""
    if e < 0:
        raise ValueError("negative exponent; use inv() first")
    n = a.modulus.modulus
    result, base = 1 % n, a.value
    while e:
        if e & 1:
            result = result * base % n
        base = base * base % n
        e >>= 1
    return Residue(result, a.modulus)


def batch_inv(values: Sequence[Residue]) -> list[Residue]:
    """Invert every element with one modular inversion (prefix-product trick)."""
    if not values:
        return []
    m = values[0].modulus
    n = m.modulus
    prefix = []
    acc = 1
    for idx, x in enumerate(values):
        if x.modulus != m:
            raise ValueError("batch_inv needs a common modulus")
        if x.value % m.p == 0:
            raise NotAUnit(f"element {idx} ({x.value}) is not a unit", index=idx)
        prefix.append(acc)
        acc = acc * x.value % n
    acc = pow(acc, -1, n)
    out = [0] * len(values)
    for idx in range(len(values) - 1, -1, -1):
        out[idx] = acc * prefix[idx] % n
        acc = acc * values[idx].value % n
    return [Residue(v, m) for v in out]


@dataclass(frozen=True, slots=True)
class Valuation:
    """Truncated p-adic valuation.

    ``saturated`` means the value was 0 modulo the full working modulus, so
    ``v`` equals that exponent and the true valuation is at least ``v``.
    """

    v: int
    saturated: bool

    def at_least(self, j: int) -> bool:
        return self.v >= j


def vp(x: int, p: int) -> int:
    """Exact p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def valuation(x: Residue | int, m: ModulusPower | None = None) -> Valuation:
    if isinstance(x, Residue):
        m = m or x.modulus
        x = x.value
    if m is None:
        raise TypeError("an integer argument needs an explicit modulus")
    if x % m.modulus == 0:
        return Valuation(m.k, True)
    v = 0
    while v < m.k and x % m.powers[v + 1] == 0:
        v += 1
    return Valuation(v, False)


def residues(values: Iterable[int], m: ModulusPower) -> list[Residue]:
    return [Residue(v % m.modulus, m) for v in values]
