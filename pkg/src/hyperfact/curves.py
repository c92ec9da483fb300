"""The quartic R_n, the Jacobi quartic J_Q and the Weierstrass curves, with the
maps I: R_n -> J_Q, J: J_Q -> E_w, K: E_w -> E_k and their inverses.

Everything is over :class:`~fractions.Fraction`. J_Q here is
``Z^2 = (X^2 - 8nX + e)^2`` with ``e = n^4 + 14n^2 + 1``, so it is singular:
J collapses the branch ``Z = -(X^2 - 8nX + e)`` onto the node ``(-2e, 0)`` of
E_w, and J^{-1} is undefined there (``y == 0``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from hyperfact.exact_arith import is_perfect_square

Point = tuple[Fraction, Fraction]


class ChainDomainError(ValueError):
    """A map was applied inside its exceptional set."""


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "(0:1:0)"


#: Projective point at infinity of E_w / E_k.
INFINITY = _Infinity()


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"n must be >= 2 (n^3 - n must be nonzero), got {n}")


# --- R_n ---------------------------------------------------------------------

def _q_poly(n: int, X) -> int | Fraction:
    """``64n^4 X^2 - (384n^5 + 64n^7 + 64n^3) X + (192n^8 + 640n^6 + 192n^4)``."""
    return (64 * n**4 * X - (384 * n**5 + 64 * n**7 + 64 * n**3)) * X + (
        192 * n**8 + 640 * n**6 + 192 * n**4
    )


def rx(n: int, X):
    """X-only part of R_n (no constant term)."""
    return (
        ((16 * n**4 * X - 128 * n**5) * X + (320 * n**6 - 32 * n**8 - 32 * n**4)) * X
        + (128 * n**9 - 256 * n**7 + 128 * n**5)
    ) * X


def rxy(n: int, X, Y):
    """Y-dependent part of R_n."""
    return (-(16 * n**6 + 16 * n**2 - 32 * n**4) * Y - _q_poly(n, X)) * Y


def rn_gamma(n: int) -> int:
    return 16 * n**12 - 64 * n**10 + 96 * n**8 - 64 * n**6 + 16 * n**4


def rn_eval(n: int, X, Y):
    """``R_n(X, Y)``; zero exactly on the curve."""
    return rx(n, X) + rxy(n, X, Y) + rn_gamma(n)


# --- Jacobi quartic ----------------------------------------------------------

@dataclass(frozen=True)
class JacobiQuartic:
    """``Z^2 = aX^4 + bX^3 + cX^2 + dX + e^2``."""

    n: int
    a: int
    b: int
    c: int
    d: int
    e: int

    @property
    def e2(self) -> int:
        return self.e * self.e

    def rhs(self, X):
        return (((self.a * X + self.b) * X + self.c) * X + self.d) * X + self.e2


@lru_cache(maxsize=256)
def jacobi_coeffs(n: int) -> JacobiQuartic:
    _check_n(n)
    e2 = n**8 + 28 * n**6 + 198 * n**4 + 28 * n**2 + 1
    e = is_perfect_square(e2)
    assert e is not None, f"e^2 = {e2} is not a square"
    assert e == n**4 + 14 * n**2 + 1
    return JacobiQuartic(
        n=n,
        a=1,
        b=-16 * n,
        c=2 * n**4 + 92 * n**2 + 2,
        d=-(16 * n**5 + 224 * n**3 + 16 * n),
        e=e,
    )


def jq_on_curve(n: int, X, Z) -> bool:
    jq = jacobi_coeffs(n)
    return Fraction(Z) ** 2 == jq.rhs(Fraction(X))


def map_I(n: int, X, Y) -> Point:
    _check_n(n)
    X, Y = Fraction(X), Fraction(Y)
    scale = Fraction((n * n - 1) ** 2, n * (n * n + 1))
    return X, scale * (Y + _q_poly(n, X) / (32 * (n**3 - n) ** 2))


def map_I_inv(n: int, X, Z) -> Point:
    _check_n(n)
    X, Z = Fraction(X), Fraction(Z)
    Y = (32 * n**3 * (n * n + 1) * Z - _q_poly(n, X)) / (32 * (n**3 - n) ** 2)
    return X, Y


# --- discriminant ------------------------------------------------------------

def bareiss_det(m: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [row[:] for row in m]
    size = len(a)
    sign, prev = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for r in range(k + 1, size):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def sylvester_matrix(n: int) -> list[list[int]]:
    """7x7 Sylvester matrix of the quartic ``k(X)`` and ``k'(X)``.

    The constant column holds the quartic's actual constant term ``e^2``.
    """
    jq = jacobi_coeffs(n)
    a, b, c, d, k0 = jq.a, jq.b, jq.c, jq.d, jq.e2
    return [
        [a, b, c, d, k0, 0, 0],
        [0, a, b, c, d, k0, 0],
        [0, 0, a, b, c, d, k0],
        [4 * a, 3 * b, 2 * c, d, 0, 0, 0],
        [0, 4 * a, 3 * b, 2 * c, d, 0, 0],
        [0, 0, 4 * a, 3 * b, 2 * c, d, 0],
        [0, 0, 0, 4 * a, 3 * b, 2 * c, d],
    ]


def sylvester_discriminant(n: int) -> int:
    """Discriminant D of ``k`` from ``Res(k, k') = (-1)^(4*3/2) * a * D``."""
    res = bareiss_det(sylvester_matrix(n))
    a = jacobi_coeffs(n).a
    d, rem = divmod(res, a)
    assert rem == 0
    return d  # (-1)^6 == 1


# --- Weierstrass forms -------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassShort:
    """``Y^2 = X'^3 + aX' + b``, with the completing-the-square constants."""

    a: Fraction
    b: Fraction
    A: Fraction
    B: Fraction
    C: Fraction

    def on_curve(self, X, Y) -> bool:
        X, Y = Fraction(X), Fraction(Y)
        return Y * Y == (X * X + self.a) * X + self.b


@dataclass(frozen=True)
class WeierstrassLong:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6``."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def on_curve(self, x, y) -> bool:
        x, y = Fraction(x), Fraction(y)
        return y * y + self.a1 * x * y + self.a3 * y == ((x + self.a2) * x + self.a4) * x + self.a6

    def short(self) -> WeierstrassShort:
        A = self.a2 + self.a1**2 / 4
        B = self.a4 + self.a1 * self.a3 / 2
        C = self.a6 + self.a3**2 / 4
        return WeierstrassShort(a=B - A * A / 3, b=(27 * C - 9 * A * B + 2 * A**3) / 27, A=A, B=B, C=C)


@lru_cache(maxsize=256)
def weierstrass_long(n: int) -> WeierstrassLong:
    q = jacobi_coeffs(n)
    a, b, c, d, e = (Fraction(v) for v in (q.a, q.b, q.c, q.d, q.e))
    return WeierstrassLong(
        a1=d / e,
        a2=c - d * d / (4 * e * e),
        a3=2 * e * b,
        a4=-4 * e * e * a,
        a6=a * (d * d - 4 * e * e * c),
    )


@lru_cache(maxsize=256)
def weierstrass_short(n: int) -> WeierstrassShort:
    return weierstrass_long(n).short()


def map_J(n: int, X, Z):
    """J_Q -> E_w. ``(0, e)`` goes to :data:`INFINITY`, ``(0, -e)`` to ``(-a2, a1 a2 - a3)``."""
    q = jacobi_coeffs(n)
    X, Z = Fraction(X), Fraction(Z)
    e, c, d = q.e, q.c, q.d
    if X == 0:
        if Z == e:
            return INFINITY
        if Z == -e:
            w = weierstrass_long(n)
            return -w.a2, w.a1 * w.a2 - w.a3
        raise ChainDomainError(f"(0, {Z}) is not on J_Q")
    x = (2 * e * (Z + e) + d * X) / X**2
    y = (4 * e * e * (Z + e) + 2 * e * (d * X + c * X * X) - Fraction(d * d, 2 * e) * X * X) / X**3
    return x, y


def map_J_inv(n: int, x, y=None):
    """E_w -> J_Q; accepts :data:`INFINITY`. Raises on ``y == 0``."""
    q = jacobi_coeffs(n)
    if x is INFINITY:
        return Fraction(0), Fraction(q.e)
    x, y = Fraction(x), Fraction(y)
    if y == 0:
        raise ChainDomainError(f"J^-1 undefined at y = 0 (x = {x})")
    e, c, d = q.e, q.c, q.d
    X = (2 * e * (x + c) - Fraction(d * d, 2 * e)) / y
    Z = -e + X * (X * x - d) / (2 * e)
    return X, Z


def map_K(curve: WeierstrassLong, x, y) -> Point:
    if x is INFINITY:
        return INFINITY
    x, y = Fraction(x), Fraction(y)
    A = curve.a2 + curve.a1**2 / 4
    return x + A / 3, y + (curve.a1 * x + curve.a3) / 2


def map_K_inv(curve: WeierstrassLong, X, Y=None) -> Point:
    if X is INFINITY:
        return INFINITY
    X, Y = Fraction(X), Fraction(Y)
    A = curve.a2 + curve.a1**2 / 4
    x = X - A / 3
    return x, Y - (curve.a1 * x + curve.a3) / 2


def two_torsion_point(n: int) -> Point:
    w = weierstrass_long(n)
    return (-2 * w.a2 + w.a1**2 / 4) / 3, (w.a1 * w.a2 - w.a3) / 2


def rational_root_candidates(n: int) -> list[Point]:
    """Integral J_Q points at ``X = +-(n^4 + 14n^2 + 1)``."""
    e = jacobi_coeffs(n).e
    out = []
    for X, f in ((e, n**4 + 14 * n**2 - 8 * n + 2), (-e, n**4 + 14 * n**2 + 8 * n + 2)):
        for sign in (1, -1):
            pt = (Fraction(X), Fraction(sign * f * e))
            assert jq_on_curve(n, *pt)
            out.append(pt)
    return out


def parabola_y(n: int, X) -> Fraction:
    """Y on the ``Z = +(X^2 - 8nX + e)`` branch: ``n (X + (n-1)^2)^2 / (n+1)^2``."""
    return Fraction(n * (Fraction(X) + (n - 1) ** 2) ** 2, (n + 1) ** 2)


def parabola_check(n: int, X, Y) -> bool:
    _check_n(n)
    return Fraction(Y) == parabola_y(n, X)


def special_points(n: int) -> list[tuple[Point, Point]]:
    """Pairs ``((X, Y) on R_n, (X, Z) on J_Q)`` that are known in closed form."""
    e = n**4 + 14 * n**2 + 1
    y0 = Fraction(2 * n**5 - 2 * n**3 + (n * n + 1) * (n * n - 1) * n * n, (n * n - 1) * n)
    return [
        ((Fraction(4 * n), y0), (Fraction(4 * n), Fraction((n * n - 1) ** 2))),
        ((Fraction((n + 1) ** 2), Fraction(0)), (Fraction((n + 1) ** 2), Fraction(-2 * (n * n + 1) * (n - 1) ** 2))),
        (
            (Fraction(e), Fraction(n * (n**4 + 15 * n * n - 2 * n + 2) ** 2, (n + 1) ** 2)),
            (Fraction(e), Fraction((n**4 + 14 * n * n - 8 * n + 2) * e)),
        ),
    ]


# --- chain walks -------------------------------------------------------------

STAGES = ("R_n", "J_Q", "E_w", "E_k")


def _fmt(v) -> str:
    return repr(v) if v is INFINITY else str(v)


@dataclass
class ChainTrace:
    """Images of one point through the stages, in walk order.

    ``entries`` is a list of ``(stage, point)``. The walk may stop early, in
    which case ``exceptional`` names the stage and reason.
    """

    n: int
    entries: list
    direction: str = "forward"
    exceptional: str | None = None

    def __post_init__(self):
        self.verify()

    def verify(self) -> None:
        """Check each adjacent pair is related by the stage map."""
        for (s1, p1), (s2, p2) in zip(self.entries, self.entries[1:]):
            if self.direction == "forward":
                src, dst, want = s1, s2, p2
                got = _forward_step(self.n, src, p1)
            else:
                src, dst, want = s2, s1, p1
                got = _forward_step(self.n, src, p2)
            if STAGES.index(dst) != STAGES.index(src) + 1 or got != want:
                raise AssertionError(f"chain entries {s1} -> {s2} are not related by the stage map")

    @property
    def last(self):
        return self.entries[-1][1]

    def point(self, stage: str):
        for s, p in self.entries:
            if s == stage:
                return p
        raise KeyError(stage)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "direction": self.direction,
            "stages": [
                {"stage": s, "point": _fmt(p) if p is INFINITY else [_fmt(p[0]), _fmt(p[1])]}
                for s, p in self.entries
            ],
            "exceptional": self.exceptional,
        }

    def __str__(self):
        lines = []
        for s, p in self.entries:
            shown = _fmt(p) if p is INFINITY else f"({_fmt(p[0])}, {_fmt(p[1])})"
            lines.append(f"{s:4} {shown}")
        if self.exceptional:
            lines.append(f"stopped: {self.exceptional}")
        return "\n".join(lines)


def _forward_step(n: int, stage: str, pt):
    if stage == "R_n":
        return map_I(n, *pt)
    if stage == "J_Q":
        return map_J(n, *pt)
    if stage == "E_w":
        return map_K(weierstrass_long(n), *pt) if pt is not INFINITY else INFINITY
    raise ValueError(f"no forward map out of {stage}")


def forward_chain(n: int, X, Y) -> ChainTrace:
    """R_n -> J_Q -> E_w -> E_k."""
    pts = [("R_n", (Fraction(X), Fraction(Y)))]
    pt = map_I(n, X, Y)
    pts.append(("J_Q", pt))
    pt = map_J(n, *pt)
    pts.append(("E_w", pt))
    pts.append(("E_k", INFINITY if pt is INFINITY else map_K(weierstrass_long(n), *pt)))
    return ChainTrace(n, pts, "forward")


def backward_chain(n: int, Xk, Yk=None) -> ChainTrace:
    """E_k -> E_w -> J_Q -> R_n. Stops with ``exceptional`` set on a domain error."""
    w = weierstrass_long(n)
    start = INFINITY if Xk is INFINITY else (Fraction(Xk), Fraction(Yk))
    pts = [("E_k", start)]
    pt = INFINITY if start is INFINITY else map_K_inv(w, *start)
    pts.append(("E_w", pt))
    try:
        pt = map_J_inv(n, pt) if pt is INFINITY else map_J_inv(n, *pt)
    except ChainDomainError as exc:
        return ChainTrace(n, pts, "backward", exceptional=f"E_w -> J_Q: {exc}")
    pts.append(("J_Q", pt))
    pts.append(("R_n", map_I_inv(n, *pt)))
    return ChainTrace(n, pts, "backward")
