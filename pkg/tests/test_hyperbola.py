import pytest
from hypothesis import given, settings, strategies as st

from hyperfact.exact_arith import factorize, is_odd_semiprime
from hyperfact.hyperbola import (
    HyperbolaParams, HyperbolaPoint, add, cardinality_region, cardinality_total,
    enumerate_by_scan, enumerate_integral_points, five_points, is_monogenic, multiply,
    on_curve, region_points, structure_checks, symmetry_orbit,
)

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 101, 1009]


def test_params_reject_small():
    with pytest.raises(ValueError):
        HyperbolaParams(1)


def test_n15_points():
    params = HyperbolaParams(15)
    region = region_points(params)
    assert [(int(p.x), int(p.y)) for p in region] == [(60, 0), (64, 16), (80, 40), (108, 72), (256, 224)]
    assert len(enumerate_integral_points(params)) == 18


def test_five_points_closed_form_n15():
    fp = five_points(3, 5)
    assert fp.p2 == HyperbolaPoint(80, 40)  # p (q+1)^2 with p=5, q=3
    assert fp.p3 == HyperbolaPoint(108, 72)
    assert fp.p1 == HyperbolaPoint(64, 16)
    assert fp.p4 == HyperbolaPoint(256, 224)
    assert five_points(5, 3) == fp


def test_five_points_equal_factors():
    with pytest.raises(NotImplementedError):
        five_points(7, 7)


def test_enumeration_matches_scan():
    for n in range(2, 400):
        params = HyperbolaParams(n)
        assert enumerate_integral_points(params) == enumerate_by_scan(params), n


def test_every_enumerated_point_is_on_curve():
    for n in (15, 21, 27, 35, 77, 360):
        params = HyperbolaParams(n)
        for pt in enumerate_integral_points(params):
            assert on_curve(params, pt.x, pt.y)
            assert symmetry_orbit(params, pt) <= enumerate_integral_points(params)


def test_on_constructor():
    params = HyperbolaParams(15)
    assert HyperbolaPoint.on(params, 80, 40).is_integral()
    with pytest.raises(ValueError):
        HyperbolaPoint.on(params, 80, 41)


def test_group_law_relations():
    for p, q in [(3, 5), (3, 7), (5, 7), (11, 13), (3, 1009)]:
        n = p * q
        params = HyperbolaParams(n)
        fp = five_points(p, q)
        assert add(params, fp.p2, fp.p3) == fp.p4
        assert add(params, add(params, fp.p1, fp.p2), fp.p2) == fp.p4
        assert add(params, fp.p1, fp.p2) == fp.p3 or add(params, fp.p1, fp.p3) == fp.p2


def test_origin_two_torsion():
    for n in (2, 15, 99):
        params = HyperbolaParams(n)
        o = HyperbolaPoint(0, 0)
        assert add(params, o, o) == params.identity
        assert multiply(params, 2, o) == params.identity


def test_counts_by_shape():
    for p in (3, 5, 7, 13):
        for a in range(1, 5):
            params = HyperbolaParams(p**a)
            assert len(enumerate_integral_points(params)) == 4 * a + 2 == cardinality_total(params)
            assert len(region_points(params)) == a + 1 == cardinality_region(params)
    with pytest.raises(NotImplementedError):
        cardinality_total(HyperbolaParams(45))


def test_structure_report():
    assert structure_checks(HyperbolaParams(15)).ok
    assert structure_checks(HyperbolaParams(3**4)).ok


def test_not_monogenic_semiprime():
    assert not is_monogenic(HyperbolaParams(15))


pq = st.tuples(st.sampled_from(PRIMES), st.sampled_from(PRIMES)).filter(lambda t: t[0] != t[1])


@given(pq)
def test_semiprime_region_is_five_points(t):
    p, q = t
    params = HyperbolaParams(p * q)
    pts = enumerate_integral_points(params)
    assert len(pts) == 18
    assert region_points(params, pts) == sorted(five_points(p, q))


def _rational_point(params, t):
    # parametrize by slope through the origin: y = t x  =>  x = 4n / (1 - t^2)
    from fractions import Fraction
    t = Fraction(t)
    x = 4 * params.n / (1 - t * t)
    return HyperbolaPoint(x, t * x)


rat = st.fractions(min_value=-50, max_value=50, max_denominator=50).filter(lambda t: abs(t) != 1)


@settings(max_examples=60)
@given(st.integers(2, 500), rat, rat, rat)
def test_group_axioms(n, a, b, c):
    params = HyperbolaParams(n)
    P, Q, R = (_rational_point(params, t) for t in (a, b, c))
    assert on_curve(params, P.x, P.y)
    assert add(params, P, Q) == add(params, Q, P)
    assert add(params, add(params, P, Q), R) == add(params, P, add(params, Q, R))
    assert add(params, P, params.identity) == P
    neg = HyperbolaPoint(P.x, -P.y)
    assert add(params, P, neg) == params.identity
    S = add(params, P, Q)
    assert on_curve(params, S.x, S.y)


@given(st.integers(2, 300), rat, st.integers(0, 12), st.integers(0, 12))
def test_multiply_is_homomorphic(n, t, j, k):
    params = HyperbolaParams(n)
    P = _rational_point(params, t)
    assert multiply(params, j + k, P) == add(params, multiply(params, j, P), multiply(params, k, P))
