"""Factorization orchestration: the P2/P3 system, the h map and the backward
walk E_k -> E_w -> J_Q -> R_n -> {P2, P3}.

Nothing here finds an E_k point that maps back to the right ``(X, Y)``
without already knowing eps; :func:`factor` with ``strategy="chain"`` gets
eps from the search, walks the chain forward and then back, and keeps the
backward trace as its certificate.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from hyperfact import baseline
from hyperfact.curves import INFINITY, ChainTrace, backward_chain, forward_chain
from hyperfact.epsilon import EpsilonProfile, epsilon_factor, epsilon_profile
from hyperfact.exact_arith import gcd, is_perfect_square, is_prime
from hyperfact.hyperbola import HyperbolaPoint

STRATEGIES = ("epsilon", "chain", "fermat", "trial")
CROSS_CHECK_LIMIT = 10**6


class DomainError(ValueError):
    """Input outside what the factorers accept (prime, even, too small)."""


@dataclass(frozen=True)
class SystemInstance:
    N: int
    X1: int
    Y1: int
    X2: int
    Y2: int

    @property
    def a(self) -> int:
        return 2 * self.N * (self.N**2 + 1)

    @property
    def b(self) -> int:
        return 2 * self.N * (self.N**2 - 1)

    @classmethod
    def from_points(cls, N: int, p2: HyperbolaPoint, p3: HyperbolaPoint) -> SystemInstance:
        vals = (p2.x - 2 * N, p2.y, p3.x - 2 * N, p3.y)
        if any(v.denominator != 1 for v in vals):
            raise ValueError("system needs integral points")
        x1, y1, x2, y2 = (int(v) for v in vals)
        return cls(N, x1, y1, x2, y2)


def verify_system(inst: SystemInstance) -> bool:
    return (
        inst.X1 * inst.X2 + inst.Y1 * inst.Y2 == inst.a
        and inst.X2 * inst.Y1 + inst.X1 * inst.Y2 == inst.b
    )


def corollary_y1(inst: SystemInstance) -> Fraction:
    """``Y1 = (b X2 - a Y2) / (X2^2 - Y2^2)``."""
    return Fraction(inst.b * inst.X2 - inst.a * inst.Y2, inst.X2**2 - inst.Y2**2)


def corollary_x1(inst: SystemInstance) -> Fraction:
    """``X1 = (b Y2 - a X2) / (Y2^2 - X2^2)``."""
    return Fraction(inst.b * inst.Y2 - inst.a * inst.X2, inst.Y2**2 - inst.X2**2)


def h_map(p2: HyperbolaPoint, p3: HyperbolaPoint) -> tuple[Fraction, Fraction]:
    return p2.x + p3.x, p2.x * p3.x


def h_inv(n: int, X, Y) -> tuple[int, int] | None:
    """Integer roots of ``t^2 - X t + Y``, ascending, or None."""
    X, Y = Fraction(X), Fraction(Y)
    if X.denominator != 1 or Y.denominator != 1:
        return None
    X, Y = int(X), int(Y)
    r = is_perfect_square(X * X - 4 * Y)
    if r is None or (X + r) % 2:
        return None
    return (X - r) // 2, (X + r) // 2


@dataclass
class FactorResult:
    n: int
    p: int
    q: int
    method: str
    certificate: EpsilonProfile | ChainTrace
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.p > self.q:
            self.p, self.q = self.q, self.p
        if not (self.p * self.q == self.n and 1 < self.p <= self.q < self.n):
            raise AssertionError(f"bad factorization {self.n} = {self.p} * {self.q}")


@dataclass
class Rejection:
    """A candidate the backward walk could not turn into factors."""

    n: int
    reason: str
    trace: ChainTrace | None = None


def _gcd_ladder(n: int, xs: tuple[int, int], ys: tuple[int, int]) -> tuple[int | None, list[int]]:
    gs = [gcd(xs[0], n), gcd(xs[1], n), gcd(ys[0], n), gcd(ys[1], n)]
    for g in gs:
        if 1 < g < n:
            return g, gs
    return None, gs


def backward_pipeline(n: int, Xk, Yk=None) -> FactorResult | Rejection:
    """Walk an E_k point back to ``{P2, P3}`` and read off factors by gcd.

    Accepts only when the R_n image is in ``Z_{>0} x Z_{>0}``; everything
    else comes back as a :class:`Rejection`.
    """
    trace = backward_chain(n, Xk, Yk)
    if trace.exceptional:
        return Rejection(n, f"exceptional point: {trace.exceptional}", trace)
    X, Y = trace.point("R_n")
    if X.denominator != 1 or Y.denominator != 1:
        return Rejection(n, "R_n image is not integral", trace)
    if X <= 0 or Y <= 0:
        return Rejection(n, "R_n image is not positive", trace)
    roots = h_inv(n, X, Y)
    if roots is None:
        return Rejection(n, "h^-1 has no integral roots", trace)
    ys = []
    for x in roots:
        y = is_perfect_square(x * x - 4 * n * x)
        if y is None:
            return Rejection(n, f"x = {x} is not on the hyperbola", trace)
        ys.append(y)
    g, gs = _gcd_ladder(n, roots, tuple(ys))
    if g is None:
        return Rejection(n, "all gcds are trivial", trace)
    return FactorResult(
        n, g, n // g, "chain", trace,
        details={"x_p2": roots[0], "x_p3": roots[1], "gcd_x_p2": gs[0], "gcd_x_p3": gs[1]},
    )


@dataclass
class ScreenStats:
    tried: int = 0
    accepted: int = 0
    rejected: Counter = field(default_factory=Counter)


def screen_candidates(n: int, candidates: Iterable) -> tuple[list[FactorResult], ScreenStats]:
    """Search hook: push E_k candidates through :func:`backward_pipeline`.

    Each candidate is ``(X, Y)`` or :data:`INFINITY`. Rejections are tallied
    by reason rather than dropped silently.
    """
    found, stats = [], ScreenStats()
    for c in candidates:
        stats.tried += 1
        res = backward_pipeline(n, c) if c is INFINITY else backward_pipeline(n, *c)
        if isinstance(res, FactorResult):
            stats.accepted += 1
            found.append(res)
        else:
            stats.rejected[res.reason.split(":")[0]] += 1
    return found, stats


def _screen(n: int) -> None:
    if n % 2 == 0:
        raise DomainError(f"even input {n}: divide out 2 first")
    if n < 15:
        raise DomainError(f"input {n} is below 15")
    if is_prime(n):
        raise DomainError(f"prime input {n}")


def _profile_for(n: int, p: int, q: int) -> EpsilonProfile:
    eps, rem = divmod(n - 1 - (p + q), 2)
    assert rem == 0 and eps > 0
    return epsilon_profile(n, eps)


def factor(n: int, strategy: str = "epsilon", budget: int | None = None) -> FactorResult | None:
    """Factor an odd composite ``n >= 15``.

    Strategies: ``epsilon`` (eps search), ``chain`` (eps search, then the
    forward-then-backward walk), ``fermat`` and ``trial`` (baselines).
    Results for ``n < 10**6`` are cross-checked against trial division.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    _screen(n)
    result: FactorResult | None = None
    if strategy in ("epsilon", "chain"):
        hit = epsilon_factor(n, budget)
        if hit is not None:
            p, q, eps = hit
            prof = epsilon_profile(n, eps)
            result = FactorResult(n, p, q, "epsilon", prof)
            if strategy == "chain":
                fwd = forward_chain(n, prof.hyper_x, prof.hyper_y)
                end = fwd.last
                back = backward_pipeline(n, end) if end is INFINITY else backward_pipeline(n, *end)
                if isinstance(back, Rejection):
                    raise AssertionError(f"chain roundtrip rejected for n={n}: {back.reason}")
                back.details["epsilon"] = eps
                result = back
    elif strategy == "fermat":
        hit = baseline.fermat(n)
        if hit is not None:
            q, p, _ = hit
            result = FactorResult(n, q, p, "fermat", _profile_for(n, q, p))
    else:
        hit = baseline.trial_division(n)
        if hit is not None:
            p, q = hit
            result = FactorResult(n, p, q, "trial", _profile_for(n, p, q))
    if result is not None and n < CROSS_CHECK_LIMIT:
        ref = baseline.trial_division(n)
        assert ref is not None
        # eps-ascending search lands on the most unbalanced pair, i.e. the
        # smallest prime factor; fermat may land elsewhere for non-semiprimes
        if strategy != "fermat":
            assert result.p == ref[0], f"{strategy} gave {result.p}, trial division {ref[0]}"
    return result
