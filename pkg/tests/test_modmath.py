import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wolstenholme.errors import ExponentOutOfRange, ModulusOverflow, NotAUnit, NotPrime
from wolstenholme.modmath import (
    Residue,
    Valuation,
    batch_inv,
    inv,
    is_prime,
    make_modulus,
    mul,
    power,
    valuation,
)


def test_make_modulus_small():
    m = make_modulus(5, 3)
    assert m.modulus == 125
    assert m.powers == (1, 5, 25, 125)


def test_make_modulus_rejects():
    with pytest.raises(NotPrime):
        make_modulus(4, 2)
    with pytest.raises(ExponentOutOfRange):
        make_modulus(5, 7)
    with pytest.raises(ExponentOutOfRange):
        make_modulus(5, 0)
    # 2642257 is the first prime whose sixth power passes 2^127
    assert is_prime(2642257)
    with pytest.raises(ModulusOverflow):
        make_modulus(2642257, 6)


def test_make_modulus_known_wolstenholme_primes():
    assert is_prime(16843)
    m = make_modulus(16843, 6)
    assert m.modulus == 16843**6 < 2**126
    assert make_modulus(2124679, 6).modulus == 2124679**6


def test_is_prime_matches_trial_division():
    def trial(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert [n for n in range(5000) if is_prime(n)] == [n for n in range(5000) if trial(n)]
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 3825123056546413051):
        assert not is_prime(n)


def test_mul_examples():
    m125 = make_modulus(5, 3)
    x = m125(77)
    assert mul(x, m125(1)) == x
    m25 = make_modulus(5, 2)
    assert mul(m25(13), m25(17)).value == 21


def test_mul_modulus_mismatch():
    with pytest.raises(ValueError):
        mul(make_modulus(5, 2)(1), make_modulus(5, 3)(1))


@pytest.mark.parametrize("p,k", [(5, 2), (7, 3), (101, 6), (16843, 6), (2124679, 6)])
def test_mul_pow_against_bigint(p, k):
    m = make_modulus(p, k)
    rng = random.Random(p * 10 + k)
    n = m.modulus
    for _ in range(10_000):
        a, b = rng.randrange(n), rng.randrange(n)
        assert mul(m(a), m(b)).value == a * b % n
    for _ in range(2_000):
        a, e = rng.randrange(n), rng.randrange(1 << 128)
        assert power(m(a), e).value == pow(a, e, n)


def test_random_120_bit_residues():
    m = make_modulus(16843, 6)
    rng = random.Random(1)
    a, b = rng.getrandbits(120) % m.modulus, rng.getrandbits(120) % m.modulus
    assert mul(m(a), m(b)).value == a * b % m.modulus


def test_inv_examples():
    assert inv(make_modulus(13, 4)(1)).value == 1
    assert inv(make_modulus(5, 2)(2)).value == 13
    assert inv(make_modulus(7, 3)(3)).value == 229
    with pytest.raises(NotAUnit):
        inv(make_modulus(7, 2)(7))


def test_pow_examples():
    m = make_modulus(5, 3)
    assert power(m(3), 0).value == 1
    assert power(m(0), 0).value == 1
    assert power(m(2), 10).value == 24
    m343 = make_modulus(7, 3)
    assert power(m343(3), 292).value == pow(3, 292, 343)
    assert (m343(3) ** 292).value == pow(3, 292, 343)


def test_batch_inv_examples():
    m = make_modulus(5, 2)
    assert batch_inv([m(1)]) == [m(1)]
    assert [r.value for r in batch_inv([m(v) for v in (1, 2, 3, 4)])] == [1, 13, 17, 19]
    assert batch_inv([]) == []
    m101 = make_modulus(101, 2)
    xs = [m101(i) for i in range(1, 101)]
    assert batch_inv(xs) == [inv(x) for x in xs]


def test_batch_inv_reports_offending_index():
    m = make_modulus(5, 2)
    with pytest.raises(NotAUnit) as exc:
        batch_inv([m(1), m(2), m(10), m(5)])
    assert exc.value.index == 2


def test_valuation_examples():
    assert valuation(make_modulus(5, 3)(0)) == Valuation(3, True)
    assert valuation(1715, make_modulus(7, 6)) == Valuation(3, False)
    assert valuation(50, make_modulus(5, 2)) == Valuation(2, True)
    assert valuation(make_modulus(7, 4)(1)) == Valuation(0, False)


primes_small = st.sampled_from([3, 5, 7, 11, 13, 101, 16843])


@settings(max_examples=300, deadline=None)
@given(primes_small, st.integers(1, 6), st.integers(0, 2**130))
def test_unit_times_inverse_is_one(p, k, x):
    m = make_modulus(p, k)
    a = m(x)
    if a.value % p == 0:
        return
    assert mul(a, inv(a)).value == 1


@settings(max_examples=300, deadline=None)
@given(primes_small, st.integers(1, 6), st.integers(1, 10**40))
def test_valuation_definition(p, k, x):
    m = make_modulus(p, k)
    v = valuation(x, m)
    assert x % p**v.v == 0
    assert v.v == k or x % p ** (v.v + 1) != 0
    assert v.saturated == (x % p**k == 0)


@settings(max_examples=100, deadline=None)
@given(primes_small, st.integers(1, 6), st.lists(st.integers(1, 10**30), min_size=1, max_size=40))
def test_batch_inv_equals_elementwise(p, k, xs):
    m = make_modulus(p, k)
    units = [m(x) for x in xs if x % p]
    assert batch_inv(units) == [inv(u) for u in units]


def test_residue_operators():
    m = make_modulus(7, 2)
    a, b = m(10), m(45)
    assert (a + b).value == 6
    assert (a - b).value == (10 - 45) % 49
    assert (-a).value == 39
    assert (a / 3).value == 10 * pow(3, -1, 49) % 49
    assert a.reduce(1) == Residue(3, make_modulus(7, 1))
