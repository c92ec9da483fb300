"""Acceptance criteria 1-8, each with its wall-clock budget.

Every test writes one ``ACCEPTANCE <id> PASS|FAIL ...`` line to the terminal.
Run standalone with ``python3 tests/test_acceptance.py`` for just those lines.
"""
from __future__ import annotations

import time
from fractions import Fraction

import pytest

from hyperfact import baseline, curves, epsilon, hyperbola, pipeline, verify
from hyperfact.exact_arith import factorize, odd_semiprimes


@pytest.fixture
def report(request):
    tr = request.config.pluginmanager.get_plugin("terminalreporter")

    def _report(cid: str, title: str, ok: bool, elapsed: float, budget: float, extra: str = ""):
        verdict = "PASS" if ok and elapsed < budget else "FAIL"
        line = f"ACCEPTANCE {cid} {verdict} {title}: {elapsed:.2f}s (budget {budget:.0f}s){' ' + extra if extra else ''}"
        if tr is not None:
            tr.write_line("")
            tr.write_line(line)
        else:
            print(line)
        assert ok, line
        assert elapsed < budget, line

    return _report


def test_1_cardinality(report):
    t0 = time.perf_counter()
    bad = []
    sp = odd_semiprimes(15, 2000)
    for n in sp:
        params = hyperbola.HyperbolaParams(n)
        pts = hyperbola.enumerate_integral_points(params)
        if len(pts) != 18 or len(hyperbola.region_points(params, pts)) != 5:
            bad.append(n)
    pp = verify.prime_powers(2000)
    for n in pp:
        (_, alpha), = factorize(n).items()
        if len(hyperbola.enumerate_integral_points(hyperbola.HyperbolaParams(n))) != 4 * alpha + 2:
            bad.append(n)
    report("1", "cardinality", not bad, time.perf_counter() - t0, 30,
           f"{len(sp)} semiprimes, {len(pp)} prime powers, mismatches={bad[:5]}")


def test_2_worked_examples(report):
    t0 = time.perf_counter()
    ok = (
        epsilon.hyper_roots_from_epsilon(15, 3) == (188, 8640)
        and curves.map_I(15, 188, 8640) == (188, 66560)
        and curves.rn_eval(15, 188, 8640) == 0
        and epsilon.hyper_roots_from_epsilon(21, 5)[0] == 304
        and epsilon.hyper_roots_from_epsilon(35, 11)[0] == 572
        and epsilon.epsilon_factor(21)[2] == 5
        and epsilon.epsilon_factor(35)[2] == 11
    )
    for n in (15, 21, 35):
        ok &= curves.jq_on_curve(n, 4 * n, (n * n - 1) ** 2)
        ok &= curves.jq_on_curve(n, (n + 1) ** 2, -2 * (n * n + 1) * (n - 1) ** 2)
    report("2", "worked examples", ok, time.perf_counter() - t0, 1)


def test_3_chain_integrity(report):
    t0 = time.perf_counter()
    ns = (15, 21, 35, 77, 5959)
    per_n = 200
    fails = []
    for n in ns:
        fails += verify.check_chain_roundtrip(n, per_n, seed=2024)
    report("3", "chain integrity", not fails, time.perf_counter() - t0, 10,
           f"{per_n * len(ns)} seeded points" + (f", first failure: {fails[0]}" if fails else ""))


def test_4_singularity(report):
    t0 = time.perf_counter()
    nonzero = [n for n in range(2, 301) if curves.sylvester_discriminant(n) != 0]
    report("4", "D = 0 for 2..300", not nonzero, time.perf_counter() - t0, 30, f"nonzero at {nonzero[:5]}")


def test_5_factorization_equivalence(report):
    t0 = time.perf_counter()
    ns = odd_semiprimes(15, 10**5)
    bad = []
    for n in ns:
        res = pipeline.factor(n, "epsilon")
        cert = res.certificate
        ref = baseline.trial_division(n)
        if not (
            (res.p, res.q) == ref
            and res.p + res.q == n - 1 - 2 * cert.epsilon
            and epsilon.f1(n, cert.epsilon) == (res.p - res.q) ** 2
        ):
            bad.append(n)
    report("5", "eps search vs trial division", not bad, time.perf_counter() - t0, 60,
           f"{len(ns) - len(bad)}/{len(ns)} agree")


def test_6_backward_pipeline(report):
    t0 = time.perf_counter()
    ns = odd_semiprimes(15, 10**4)
    bad = []
    for n in ns:
        p, q, eps = epsilon.epsilon_factor(n)
        five = hyperbola.five_points(p, q)
        end = curves.forward_chain(n, *epsilon.hyper_roots_from_epsilon(n, eps)).last
        res = pipeline.backward_pipeline(n, *end)
        if not (
            isinstance(res, pipeline.FactorResult)
            and (res.details["x_p2"], res.details["x_p3"]) == (five.p2.x, five.p3.x)
            and 1 < res.details["gcd_x_p2"] < n
            and 1 < res.details["gcd_x_p3"] < n
        ):
            bad.append(n)
    report("6", "backward pipeline", not bad, time.perf_counter() - t0, 60,
           f"{len(ns) - len(bad)}/{len(ns)} recovered")


def test_7_gamma_scan(report, tmp_path_factory):
    t0 = time.perf_counter()
    ns = odd_semiprimes(15, 3000)
    sub_fail, counterexamples = [], []
    for n in ns:
        _, _, eps = epsilon.epsilon_factor(n)
        res = epsilon.gamma_scan(n, n, eps)
        if not all(res.sub_claims().values()):
            sub_fail.append(n)
        if len(res.members) != 3:
            counterexamples.append((n, res.members))
    path = tmp_path_factory.mktemp("gamma") / "counterexamples.csv"
    path.write_text("n,members\n" + "".join(f"{n},{' '.join(map(str, m))}\n" for n, m in counterexamples))
    report("7", "gamma sub-claims", not sub_fail, time.perf_counter() - t0, 120,
           f"{len(ns)} semiprimes, {len(counterexamples)} with #Gamma != 3 (report: {path})")


def test_8_coefficients(report):
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 1001):
        q = curves.jacobi_coeffs(n)
        w = curves.weierstrass_long(n)
        tx, ty = curves.two_torsion_point(n)
        if not (q.e == n**4 + 14 * n**2 + 1 and q.d == -16 * n * q.e and w.a1 * w.a2 == w.a3
                and ty == 0 and w.short().on_curve(tx, ty)):
            bad.append(n)
    report("8", "coefficient identities", not bad, time.perf_counter() - t0, 5, f"bad={bad[:5]}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
