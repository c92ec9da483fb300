"""Epsilon parameterization of Hyper-X / Hyper-Y and epsilon-driven factoring.

For ``n = p*q`` with odd primes ``p != q``, ``(p+1)(q+1) = 2(n - eps)``, so
``p + q = n - 1 - 2*eps``. Searching eps upward is the same as searching
``s = p + q`` downward from ``n - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from hyperfact import kernels
from hyperfact._kernels_py import f1, f2
from hyperfact.exact_arith import isqrt

__all__ = [
    "EpsilonProfile",
    "GammaScanResult",
    "EpsilonLemmaReport",
    "epsilon_factor",
    "epsilon_from_factors",
    "epsilon_profile",
    "f1",
    "f2",
    "gamma_scan",
    "check_epsilon_lemma",
    "hyper_roots_from_epsilon",
]

# ε candidates handed to the kernel per call
_CHUNK = 1 << 20


@dataclass(frozen=True)
class EpsilonProfile:
    n: int
    epsilon: int
    k: int
    sum_pq: int
    phi: int
    hyper_x: int
    hyper_y: int


def epsilon_profile(n: int, eps: int) -> EpsilonProfile:
    k = 2 * (n - eps)
    hx, hy = hyper_roots_from_epsilon(n, eps)
    return EpsilonProfile(
        n=n, epsilon=eps, k=k, sum_pq=n - 1 - 2 * eps, phi=2 * (eps + 1), hyper_x=hx, hyper_y=hy
    )


def hyper_roots_from_epsilon(n: int, eps: int) -> tuple[int, int]:
    """``(X, Y) = (2(n-eps)(n+1) - (n-1)^2, 4n(n-eps)^2)``."""
    if not 0 < eps < n:
        raise ValueError(f"need 0 < eps < n, got eps={eps}, n={n}")
    k = 2 * (n - eps)
    return k * (n + 1) - (n - 1) ** 2, k * k * n


def epsilon_from_factors(p: int, q: int) -> int:
    n = p * q
    assert p + q + 1 < n, "p + q + 1 must be below p*q"
    eps, rem = divmod(n - 1 - (p + q), 2)
    assert rem == 0 and eps > 0, f"({p}, {q}) does not give a positive integral eps"
    return eps


def epsilon_factor(n: int, budget: int | None = None) -> tuple[int, int, int] | None:
    """Smallest eps whose radicand ``(n-1-2eps)^2 - 4n`` is a nonzero square.

    Returns ``(p, q, eps)`` with ``p > q`` or None if nothing turns up within
    ``budget`` candidates (default ``n // 2``). The scan also stops once
    ``s = n-1-2eps`` drops below ``2*sqrt(n)``, since no factor pair lies
    beyond that.
    """
    if n % 2 == 0:
        raise ValueError(f"{n} is even; divide out 2 first")
    if budget is None:
        budget = n // 2
    s_min = isqrt(4 * n)
    if s_min * s_min < 4 * n:
        s_min += 1
    # s = n-1-2eps >= s_min  <=>  eps <= (n-1-s_min)/2
    last = min(budget, (n - 1 - s_min) // 2)
    eps = 1
    while eps <= last:
        count = min(_CHUNK, last - eps + 1)
        hit = kernels.scan_radicand(n, n - 1 - 2 * eps, -2, count, 1)
        if hit is not None:
            i, r = hit
            e = eps + i
            s = n - 1 - 2 * e
            return (s + r) // 2, (s - r) // 2, e
        eps += count
    return None


@dataclass
class GammaScanResult:
    n: int
    i_max: int
    members: list[int]
    provenance: dict[int, tuple[bool, bool]] = field(default_factory=dict)
    epsilon1: int | None = None
    epsilon2: int | None = None
    conjecture_holds: bool = False

    def sub_claims(self) -> dict[str, bool]:
        """The parts of the conjecture that can be checked independently of #members."""
        n, e1 = self.n, self.epsilon1
        if e1 is None:
            return {"eps1_in_gamma": False, "n_in_gamma": self.n in self.members,
                    "eps2_in_gamma": False, "f2_eps1_is_f1n_f1eps1": False}
        return {
            "eps1_in_gamma": e1 in self.members,
            "n_in_gamma": n in self.members,
            "eps2_in_gamma": (n - 1 - e1) in self.members,
            "f2_eps1_is_f1n_f1eps1": f2(n, e1) == f1(n, n) * f1(n, e1),
        }


def gamma_scan(n: int, i_max: int | None = None, epsilon1: int | None = None) -> GammaScanResult:
    """Every ``i`` in ``1..i_max`` where ``f1(i)`` or ``f2(i)`` is a perfect square.

    ``epsilon1`` is the known eps of ``n`` if available; otherwise the smallest
    member is taken. Each member records which of f1/f2 fired.
    """
    if i_max is None:
        i_max = n
    hits = kernels.gamma_hits(n, 1, i_max)
    members = [i for i, _, _ in hits]
    res = GammaScanResult(n=n, i_max=i_max, members=members,
                          provenance={i: (a, b) for i, a, b in hits})
    if epsilon1 is None and members:
        epsilon1 = members[0]
    if epsilon1 is not None:
        res.epsilon1 = epsilon1
        res.epsilon2 = n - 1 - epsilon1
    if res.epsilon1 is not None:
        e1, e2 = res.epsilon1, res.epsilon2
        res.conjecture_holds = (
            members == sorted({e1, e2, n})
            and len(members) == 3
            and e1 + e2 == n - 1
            and f2(n, e1) == f1(n, n) * f1(n, e1)
        )
    return res


@dataclass
class EpsilonLemmaReport:
    n: int
    epsilon1: int
    epsilon2: int
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def check_epsilon_lemma(n: int, eps1: int, eps2: int) -> EpsilonLemmaReport:
    if eps1 + eps2 != n - 1:
        raise ValueError(f"eps1 + eps2 must equal n - 1 = {n - 1}")
    x1, _ = hyper_roots_from_epsilon(n, eps1)
    x2, _ = hyper_roots_from_epsilon(n, eps2)
    phi1, phi2 = 2 * (eps1 + 1), 2 * (eps2 + 1)
    checks = {
        "x_sum_is_8n": x1 + x2 == 8 * n,
        "x_diff_is_2(n+1)(eps2-eps1)": x1 - x2 == 2 * (n + 1) * (eps2 - eps1),
        "phi_sum_is_2(n+1)": phi1 + phi2 == 2 * (n + 1),
        "phi_product_is_4(eps1*eps2+n)": phi1 * phi2 == 4 * (eps1 * eps2 + n),
    }
    return EpsilonLemmaReport(n, eps1, eps2, checks)
