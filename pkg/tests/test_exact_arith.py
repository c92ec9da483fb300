import math

import pytest
import sympy
from hypothesis import given, strategies as st

from hyperfact.exact_arith import (
    INFINITY, divisors, factorize, is_odd_semiprime, is_perfect_square, is_prime, isqrt,
    odd_semiprimes, p_adic_valuation, smallest_prime_factors,
)


@given(st.integers(min_value=0, max_value=10**60))
def test_isqrt_floor(m):
    r = isqrt(m)
    assert r * r <= m < (r + 1) ** 2


def test_isqrt_negative():
    with pytest.raises(ValueError):
        isqrt(-1)


@given(st.integers(min_value=0, max_value=10**40))
def test_perfect_square_of_square(r):
    assert is_perfect_square(r * r) == r
    if r > 0:
        assert is_perfect_square(r * r + 1) is None if r * r + 1 != (r + 1) ** 2 else True


def test_perfect_square_brute():
    squares = {r * r for r in range(200)}
    for m in range(-5, 200 * 200):
        got = is_perfect_square(m)
        assert (got is not None) == (m in squares)
        if got is not None:
            assert got * got == m


def test_is_prime_matches_sympy_small():
    for n in range(-3, 20000):
        assert is_prime(n) == sympy.isprime(n), n


@given(st.integers(min_value=2, max_value=2**80))
def test_is_prime_matches_sympy_large(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (2047, 3215031751, 3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)


@given(st.integers(min_value=1, max_value=10**9))
def test_factorize_matches_sympy(n):
    assert factorize(n) == sympy.factorint(n)


def test_factorize_rejects_nonpositive():
    with pytest.raises(ValueError):
        factorize(0)


@given(st.integers(min_value=1, max_value=10**6))
def test_divisors(n):
    assert divisors(n) == [d for d in sympy.divisors(n)]


def test_valuation():
    assert p_adic_valuation(5, 75) == 2
    assert p_adic_valuation(3, 75) == 1
    assert p_adic_valuation(7, 75) == 0
    assert p_adic_valuation(3, 18) == 2
    assert p_adic_valuation(2, -12) == 2
    assert p_adic_valuation(3, 0) == INFINITY == math.inf
    with pytest.raises(ValueError):
        p_adic_valuation(4, 16)


@given(st.sampled_from([2, 3, 5, 7, 11, 101]), st.integers(0, 30), st.integers(1, 10**6))
def test_valuation_property(p, k, m):
    v = p_adic_valuation(p, m)
    assert p_adic_valuation(p, m * p**k) == v + k


def test_odd_semiprimes_brute():
    brute = [n for n in range(1, 3000) if is_odd_semiprime(n)]
    assert odd_semiprimes(1, 3000) == brute
    assert odd_semiprimes(15, 36) == [15, 21, 33, 35]
    assert odd_semiprimes(36, 36) == []
    assert 9 not in brute and 25 not in brute


def test_spf_sieve():
    spf = smallest_prime_factors(5000)
    for m in range(2, 5000):
        assert spf[m] == min(sympy.primefactors(m))
