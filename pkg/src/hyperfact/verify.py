"""Named invariant checks run by ``hyperfact verify``.

Each check returns a list of :class:`Failure`; an empty list means it held.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from hyperfact import curves, epsilon, hyperbola, pipeline
from hyperfact.exact_arith import factorize, odd_semiprimes, smallest_prime_factors


@dataclass(frozen=True)
class Check:
    name: str
    module: str
    claim: str


@dataclass(frozen=True)
class Failure:
    check: Check
    n: int | None
    detail: str

    def __str__(self):
        where = "" if self.n is None else f" n={self.n}"
        return f"FAIL {self.check.name}{where}: {self.detail} [{self.check.module}: {self.check.claim}]"


CHECKS = {
    c.name: c
    for c in (
        Check("semiprime-cardinality", "hyperbola_core", "Card(B_n(Z)) = 18 and exactly 5 points with x >= 4n"),
        Check("five-point-set", "hyperbola_core", "the x >= 4n, y >= 0 points are P0..P4 in closed form"),
        Check("group-law", "hyperbola_core", "P4 = P2 + P3 = P1 + 2 P2; 2(0,0) = (4n,0)"),
        Check("prime-power-cardinality", "hyperbola_core", "Card(B_{p^a}(Z)) = 4a + 2, region a + 1"),
        Check("parity", "hyperbola_core", "Card(B_n(Z)) = 0 mod 2"),
        Check("system", "factor_pipeline", "X1 X2 + Y1 Y2 = 2N(N^2+1), X2 Y1 + X1 Y2 = 2N(N^2-1)"),
        Check("hyper-roots", "epsilon_frame", "X = 2(n-eps)(n+1) - (n-1)^2, Y = 4n(n-eps)^2, f1(eps) = (p-q)^2"),
        Check("rn-vanishes", "curve_chain", "R_n(Hyper-X, Hyper-Y) = 0"),
        Check("chain-backward", "factor_pipeline", "backward walk from E_k recovers {x_P2, x_P3} with nontrivial gcds"),
        Check("chain-roundtrip", "curve_chain", "I^-1 I = J^-1 J = K^-1 K = id off the exceptional sets"),
        Check("discriminant", "curve_chain", "Sylvester discriminant of the quartic is 0 (J_Q singular)"),
        Check("coefficients", "curve_chain", "e = n^4+14n^2+1, d = -16ne, a1 a2 = a3"),
    )
}


def _fail(name: str, n: int | None, detail: str) -> Failure:
    return Failure(CHECKS[name], n, detail)


def check_semiprime(n: int, faults: frozenset = frozenset()) -> list[Failure]:
    """Every semiprime-level check for one odd semiprime ``n``."""
    out: list[Failure] = []
    f = factorize(n)
    q, p = sorted(f)
    params = hyperbola.HyperbolaParams(n)
    pts = hyperbola.enumerate_integral_points(params)
    region = hyperbola.region_points(params, pts)
    total = len(pts) + (1 if "semiprime-cardinality" in faults else 0)
    if total != 18 or len(region) != 5:
        out.append(_fail("semiprime-cardinality", n, f"got {total} points, {len(region)} in region"))
    if total % 2 or "parity" in faults:
        out.append(_fail("parity", n, f"count {total}"))
    five = hyperbola.five_points(p, q)
    if sorted(region) != sorted(five) or "five-point-set" in faults:
        out.append(_fail("five-point-set", n, f"enumerated {region} vs closed form {list(five)}"))
    add = hyperbola.add
    p23 = add(params, five.p2, five.p3)
    p122 = add(params, add(params, five.p1, five.p2), five.p2)
    o2 = add(params, hyperbola.HyperbolaPoint(0, 0), hyperbola.HyperbolaPoint(0, 0))
    if not (p23 == five.p4 == p122 and o2 == params.identity) or "group-law" in faults:
        out.append(_fail("group-law", n, f"P2+P3={p23}, P1+2P2={p122}, P4={five.p4}"))
    inst = pipeline.SystemInstance.from_points(n, five.p2, five.p3)
    if not pipeline.verify_system(inst) or "system" in faults:
        out.append(_fail("system", n, f"{inst} does not satisfy the system"))
    eps = epsilon.epsilon_from_factors(p, q)
    hx, hy = epsilon.hyper_roots_from_epsilon(n, eps)
    want = pipeline.h_map(five.p2, five.p3)
    if (hx, hy) != want or epsilon.f1(n, eps) != (p - q) ** 2 or "hyper-roots" in faults:
        out.append(_fail("hyper-roots", n, f"({hx}, {hy}) vs {want}"))
    if curves.rn_eval(n, hx, hy) != 0 or "rn-vanishes" in faults:
        out.append(_fail("rn-vanishes", n, f"R_n = {curves.rn_eval(n, hx, hy)}"))
    end = curves.forward_chain(n, hx, hy).last
    res = pipeline.backward_pipeline(n, *end)
    if "chain-backward" in faults or not isinstance(res, pipeline.FactorResult):
        out.append(_fail("chain-backward", n, getattr(res, "reason", "fault injected")))
    elif (res.details["x_p2"], res.details["x_p3"]) != (five.p2.x, five.p3.x) or not all(
        1 < res.details[k] < n for k in ("gcd_x_p2", "gcd_x_p3")
    ):
        out.append(_fail("chain-backward", n, f"recovered {res.details}"))
    return out


def check_prime_power(n: int, faults: frozenset = frozenset()) -> list[Failure]:
    (_, alpha), = factorize(n).items()
    params = hyperbola.HyperbolaParams(n)
    pts = hyperbola.enumerate_integral_points(params)
    total = len(pts) + (1 if "prime-power-cardinality" in faults else 0)
    region = len(hyperbola.region_points(params, pts))
    out = []
    if total != 4 * alpha + 2 or region != alpha + 1:
        out.append(_fail("prime-power-cardinality", n, f"got {total} / {region}, alpha={alpha}"))
    if total % 2 or "parity" in faults:
        out.append(_fail("parity", n, f"count {total}"))
    return out


def random_on_rn(n: int, rng: random.Random, branch: int = 1) -> tuple[Fraction, Fraction]:
    """A random rational point of R_n with ``X != 0``.

    ``branch=+1`` picks ``Z = X^2 - 8nX + e`` on J_Q, ``-1`` the other sign.
    """
    while True:
        X = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**4))
        if X != 0:
            break
    e = curves.jacobi_coeffs(n).e
    Z = branch * (X * X - 8 * n * X + e)
    return curves.map_I_inv(n, X, Z)


def check_chain_roundtrip(n: int, samples: int, seed: int, faults: frozenset = frozenset()) -> list[Failure]:
    rng = random.Random(f"{seed}:{n}")
    w = curves.weierstrass_long(n)
    out = []
    for _ in range(samples):
        X, Y = random_on_rn(n, rng, 1)
        XZ = curves.map_I(n, X, Y)
        xy = curves.map_J(n, *XZ)
        kk = curves.map_K(w, *xy)
        ok = (
            curves.map_I_inv(n, *XZ) == (X, Y)
            and xy is not curves.INFINITY
            and xy[1] != 0
            and curves.map_J_inv(n, *xy) == XZ
            and curves.map_K_inv(w, *kk) == xy
            and curves.backward_chain(n, *kk).point("R_n") == (X, Y)
        )
        if not ok or "chain-roundtrip" in faults:
            out.append(_fail("chain-roundtrip", n, f"roundtrip broke at (X, Y) = ({X}, {Y})"))
            break
    return out


def check_curve_constants(n: int, faults: frozenset = frozenset()) -> list[Failure]:
    out = []
    d = curves.sylvester_discriminant(n)
    if d != 0 or "discriminant" in faults:
        out.append(_fail("discriminant", n, f"D = {d}"))
    q = curves.jacobi_coeffs(n)
    w = curves.weierstrass_long(n)
    if not (q.e == n**4 + 14 * n**2 + 1 and q.d == -16 * n * q.e and w.a1 * w.a2 == w.a3) or "coefficients" in faults:
        out.append(_fail("coefficients", n, f"e={q.e}, d={q.d}, a1 a2 - a3 = {w.a1 * w.a2 - w.a3}"))
    return out


def prime_powers(limit: int) -> list[int]:
    """Every ``p^a < limit`` with ``a >= 1``, ascending."""
    spf = smallest_prime_factors(max(limit, 2))
    out = []
    for p in range(2, limit):
        if spf[p] == p:
            v = p
            while v < limit:
                out.append(v)
                v *= p
    return sorted(out)


def semiprimes(limit: int) -> list[int]:
    return odd_semiprimes(15, limit)
