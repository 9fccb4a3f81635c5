import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wolstenholme.errors import RangeTooLarge
from wolstenholme.modmath import is_prime
from wolstenholme.primes import PrimeRange, count_primes, primes_in


def _trial(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def test_examples():
    assert primes_in(PrimeRange(2, 10)) == [2, 3, 5, 7]
    assert primes_in((16843, 16844)) == [16843]
    assert count_primes((2, 10**5)) == 9592


def test_prime_counting_table():
    # pi(10^k) and pi(2^21)
    assert count_primes((2, 1000)) == 168
    assert count_primes((2, 10**4)) == 1229
    assert count_primes((2, 10**6)) == 78498
    assert count_primes((2, 1 << 21)) == 155611


def test_trial_division_below_10_4():
    assert primes_in((2, 10**4)) == [n for n in range(10**4) if _trial(n)]


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10**4 - 1), st.integers(1, 3000))
def test_subranges_match_trial_division(lo, width):
    hi = min(lo + width, 10**4)
    if hi <= lo:
        return
    assert primes_in((lo, hi)) == [n for n in range(lo, hi) if _trial(n)]


def test_segment_boundaries():
    # ranges straddling 2^17, the end of the first odd-only segment
    ps = primes_in((131000, 132000))
    assert ps == [n for n in range(131000, 132000) if is_prime(n)]


def test_outputs_are_prime_near_top():
    ps = primes_in(((1 << 21) - 5000, 1 << 21))
    assert ps and all(is_prime(p) for p in ps)
    assert ps == sorted(ps)


def test_range_validation():
    with pytest.raises(RangeTooLarge):
        primes_in((2, (1 << 21) + 1))
    with pytest.raises(ValueError):
        PrimeRange(10, 10)
    with pytest.raises(ValueError):
        PrimeRange(1, 10)
