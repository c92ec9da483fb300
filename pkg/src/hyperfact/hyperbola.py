"""The hyperbola ``y^2 = x^2 - 4nx``: group law, integral points, counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from hyperfact.exact_arith import divisors, factorize, p_adic_valuation


@dataclass(frozen=True)
class HyperbolaParams:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"curve parameter must be >= 2, got {self.n}")

    @property
    def identity(self) -> HyperbolaPoint:
        return HyperbolaPoint(Fraction(4 * self.n), Fraction(0))


@dataclass(frozen=True, order=True)
class HyperbolaPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def on(cls, params: HyperbolaParams, x, y) -> HyperbolaPoint:
        """Build a point, checking it lies on the curve."""
        if not on_curve(params, x, y):
            raise ValueError(f"({x}, {y}) is not on y^2 = x^2 - {4 * params.n}x")
        return cls(x, y)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def __repr__(self):
        return f"({self.x}, {self.y})"


def on_curve(params: HyperbolaParams, x, y) -> bool:
    x, y = Fraction(x), Fraction(y)
    return y * y == x * x - 4 * params.n * x


def add(params: HyperbolaParams, p: HyperbolaPoint, q: HyperbolaPoint) -> HyperbolaPoint:
    """Group law with identity ``(4n, 0)``."""
    n2 = 2 * params.n
    xp, xq = p.x - n2, q.x - n2
    x = (xp * xq + p.y * q.y) / n2 + n2
    y = (p.y * xq + q.y * xp) / n2
    return HyperbolaPoint(x, y)


def multiply(params: HyperbolaParams, k: int, p: HyperbolaPoint) -> HyperbolaPoint:
    """``k * p`` for ``k >= 0`` by double-and-add."""
    if k < 0:
        raise ValueError("negative multiplier")
    acc = params.identity
    while k:
        if k & 1:
            acc = add(params, acc, p)
        p = add(params, p, p)
        k >>= 1
    return acc


@dataclass(frozen=True)
class FivePointSet:
    """Integral points with ``x >= 4n, y >= 0`` for ``n = p*q``; ``x`` ascending
    among ``P2, P3``."""

    p0: HyperbolaPoint
    p1: HyperbolaPoint
    p2: HyperbolaPoint
    p3: HyperbolaPoint
    p4: HyperbolaPoint

    def __iter__(self):
        return iter((self.p0, self.p1, self.p2, self.p3, self.p4))


def five_points(p: int, q: int) -> FivePointSet:
    if p == q:
        raise NotImplementedError("five-point structure is undefined for p == q")
    if p < q:
        p, q = q, p
    n = p * q
    a = HyperbolaPoint(p * (q + 1) ** 2, p * (q * q - 1))
    b = HyperbolaPoint(q * (p + 1) ** 2, q * (p * p - 1))
    p2, p3 = sorted((a, b))
    return FivePointSet(
        p0=HyperbolaPoint(4 * n, 0),
        p1=HyperbolaPoint((p + q) ** 2, p * p - q * q),
        p2=p2,
        p3=p3,
        p4=HyperbolaPoint((n + 1) ** 2, n * n - 1),
    )


def enumerate_integral_points(params: HyperbolaParams) -> set[HyperbolaPoint]:
    """All integral points, from ``(x-2n-y)(x-2n+y) = 4n^2``.

    Both factors must be even, so write them as ``2u, 2v`` with ``uv = n^2``.
    """
    n = params.n
    nn = n * n
    pts = set()
    for u in divisors(nn):
        v = nn // u
        for su, sv in ((u, v), (-u, -v)):
            pts.add(HyperbolaPoint(su + sv + 2 * n, sv - su))
    return pts


def enumerate_by_scan(params: HyperbolaParams) -> set[HyperbolaPoint]:
    """Range-scan cross-check: every integral x in ``[4n, (n+1)^2]`` plus the
    mirror ``x -> 4n - x``. Quadratic in n; keep n small."""
    from hyperfact.exact_arith import is_perfect_square

    n = params.n
    pts = set()
    for x in range(4 * n, (n + 1) ** 2 + 1):
        y = is_perfect_square(x * x - 4 * n * x)
        if y is None:
            continue
        for xx in (x, 4 * n - x):
            pts.add(HyperbolaPoint(xx, y))
            pts.add(HyperbolaPoint(xx, -y))
    return pts


def region_points(params: HyperbolaParams, points=None) -> list[HyperbolaPoint]:
    """Integral points with ``x >= 4n`` and ``y >= 0``, sorted by x."""
    if points is None:
        points = enumerate_integral_points(params)
    four_n = 4 * params.n
    return sorted(p for p in points if p.x >= four_n and p.y >= 0)


def _shape(n: int) -> tuple[str, int]:
    f = factorize(n)
    if len(f) == 1:
        return "prime_power", next(iter(f.values()))
    if len(f) == 2 and all(e == 1 for e in f.values()):
        return "semiprime", 1
    raise NotImplementedError(f"no closed-form count for n = {n} ({f})")


def cardinality_region(params: HyperbolaParams) -> int:
    kind, alpha = _shape(params.n)
    return alpha + 1 if kind == "prime_power" else 5


def cardinality_total(params: HyperbolaParams) -> int:
    kind, alpha = _shape(params.n)
    return 4 * alpha + 2 if kind == "prime_power" else 18


def symmetry_orbit(params: HyperbolaParams, pt: HyperbolaPoint) -> set[HyperbolaPoint]:
    """Images under ``y -> -y`` and ``x -> 4n - x``."""
    x2 = 4 * params.n - pt.x
    return {
        HyperbolaPoint(pt.x, pt.y),
        HyperbolaPoint(pt.x, -pt.y),
        HyperbolaPoint(x2, pt.y),
        HyperbolaPoint(x2, -pt.y),
    }


def generated_within(params: HyperbolaParams, gen: HyperbolaPoint, steps: int) -> set[HyperbolaPoint]:
    """``{k*gen : 1 <= k <= steps}``."""
    out = set()
    acc = gen
    for _ in range(steps):
        out.add(acc)
        acc = add(params, acc, gen)
    return out


def is_monogenic(params: HyperbolaParams, points: set[HyperbolaPoint] | None = None) -> bool:
    """True if some integral point's multiples cover every integral point."""
    if points is None:
        points = enumerate_integral_points(params)
    size = len(points)
    return any(points <= generated_within(params, g, size) for g in points)


@dataclass
class StructureReport:
    n: int
    kind: str
    total: int
    region: int
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def structure_checks(params: HyperbolaParams) -> StructureReport:
    n = params.n
    kind, alpha = _shape(n)
    pts = enumerate_integral_points(params)
    total = len(pts)
    region = len(region_points(params, pts))
    checks = {
        "total_even": total % 2 == 0,
        "total_matches_formula": total == cardinality_total(params),
        "region_matches_formula": region == cardinality_region(params),
        "total_is_4region_minus_2": total == 4 * region - 2,
        "origin_is_2_torsion": add(params, HyperbolaPoint(0, 0), HyperbolaPoint(0, 0)) == params.identity,
    }
    if kind == "semiprime":
        checks["total_is_2_3_squared"] = total == 18 == 2 * 3**2
        checks["v3_of_total_is_2"] = p_adic_valuation(3, total) == 2
        checks["v2_of_total_is_1"] = p_adic_valuation(2, total) == 1
    else:
        checks["total_is_2_times_2alpha_plus_1"] = total == 2 * (2 * alpha + 1)
    return StructureReport(n=n, kind=kind, total=total, region=region, checks=checks)
