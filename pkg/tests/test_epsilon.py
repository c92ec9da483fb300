import pytest
from hypothesis import given, strategies as st

from hyperfact import baseline, epsilon
from hyperfact.epsilon import (
    check_epsilon_lemma, epsilon_factor, epsilon_from_factors, epsilon_profile, f1, f2,
    gamma_scan, hyper_roots_from_epsilon,
)
from hyperfact.exact_arith import is_perfect_square, odd_semiprimes
from hyperfact.hyperbola import five_points
from hyperfact.pipeline import h_map

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 101, 1009, 7919]
pq = st.tuples(st.sampled_from(PRIMES), st.sampled_from(PRIMES)).filter(lambda t: t[0] != t[1])


def test_worked_examples():
    assert hyper_roots_from_epsilon(15, 3) == (188, 8640)
    assert hyper_roots_from_epsilon(21, 5)[0] == 304
    assert hyper_roots_from_epsilon(35, 11)[0] == 572
    prof = epsilon_profile(15, 3)
    assert (prof.k, prof.sum_pq, prof.phi) == (24, 8, 8)


def test_hyper_roots_domain():
    with pytest.raises(ValueError):
        hyper_roots_from_epsilon(15, 0)
    with pytest.raises(ValueError):
        hyper_roots_from_epsilon(15, 15)


@given(pq)
def test_profile_invariants(t):
    p, q = t
    n = p * q
    eps = epsilon_from_factors(p, q)
    prof = epsilon_profile(n, eps)
    assert prof.k == (p + 1) * (q + 1)
    assert prof.sum_pq == p + q
    assert prof.phi == (p - 1) * (q - 1)
    assert f1(n, eps) == (p - q) ** 2
    assert (prof.hyper_x, prof.hyper_y) == h_map(five_points(p, q).p2, five_points(p, q).p3)


@given(pq)
def test_epsilon_factor_recovers(t):
    p, q = t
    n = p * q
    got = epsilon_factor(n)
    assert got == (max(p, q), min(p, q), epsilon_from_factors(p, q))


def test_epsilon_factor_agrees_with_trial_division():
    for n in odd_semiprimes(15, 20000):
        p, q, eps = epsilon_factor(n)
        assert q == baseline.trial_division(n)[0]
        assert p + q == n - 1 - 2 * eps


def test_epsilon_factor_primes_and_budget():
    assert epsilon_factor(101) is None
    assert epsilon_factor(5959, budget=10) is None
    assert epsilon_factor(5959, budget=2899) == (101, 59, 2899)
    with pytest.raises(ValueError):
        epsilon_factor(100)


def test_epsilon_factor_odd_composites():
    # non-semiprime composites still return a nontrivial split
    for n in (45, 75, 3 * 5 * 7, 9 * 49, 27):
        p, q, _ = epsilon_factor(n)
        assert p * q == n and 1 < q <= p < n


@given(st.integers(3, 10**6), st.integers(1, 10**6))
def test_f2_is_multiple_of_f1(n, i):
    assert f2(n, i) == (n - 1) ** 2 * f1(n, i)


def test_gamma_n15():
    res = gamma_scan(15)
    assert res.members == [3, 11, 15]
    assert res.conjecture_holds
    assert all(res.sub_claims().values())
    assert res.provenance[3] == (True, True)


def test_gamma_against_brute_force():
    for n in odd_semiprimes(15, 400):
        brute = [i for i in range(1, n + 1)
                 if is_perfect_square(f1(n, i)) is not None or is_perfect_square(f2(n, i)) is not None]
        assert gamma_scan(n).members == brute, n


def test_gamma_without_known_eps():
    res = gamma_scan(35)
    assert res.epsilon1 == 11 and res.epsilon2 == 23


def test_epsilon_lemma():
    for p, q in [(3, 5), (5, 7), (11, 13), (59, 101)]:
        n = p * q
        e1 = epsilon_from_factors(p, q)
        assert check_epsilon_lemma(n, e1, n - 1 - e1).ok
    with pytest.raises(ValueError):
        check_epsilon_lemma(15, 3, 3)
