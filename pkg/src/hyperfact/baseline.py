"""Reference factorers: trial division and Fermat's difference of squares."""
from __future__ import annotations

import time
from dataclasses import dataclass

from hyperfact import kernels
from hyperfact.exact_arith import isqrt

_CHUNK = 1 << 20


@dataclass(frozen=True)
class BaselineReport:
    n: int
    p: int
    q: int
    iterations: int
    elapsed_ns: int
    method: str


def _trial(n: int) -> tuple[int, int, int] | None:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    steps = 1
    if n % 2 == 0:
        return (2, n // 2, steps) if n > 2 else None
    f = 3
    while f * f <= n:
        steps += 1
        if n % f == 0:
            return f, n // f, steps
        f += 2
    return None


def trial_division(n: int) -> tuple[int, int] | None:
    """Smallest prime factor and its cofactor; None when ``n`` is prime."""
    hit = _trial(n)
    return None if hit is None else hit[:2]


def _fermat(n: int) -> tuple[int, int, int, int] | None:
    if n % 2 == 0:
        raise ValueError(f"{n} is even; divide out 2 first")
    s = isqrt(4 * n)
    if s * s < 4 * n:
        s += 1
    tried = 0
    # s = n + 1 always hits (the trivial pair 1 * n)
    while s <= n + 1:
        count = min(_CHUNK, n + 2 - s)
        hit = kernels.scan_radicand(n, s, 1, count, 0)
        if hit is not None:
            i, r = hit
            s += i
            tried += i + 1
            q, p = (s - r) // 2, (s + r) // 2
            return (None if q == 1 else (q, p, s, tried))
        s += count
        tried += count
    return None


def fermat(n: int) -> tuple[int, int, int] | None:
    """Scan ``s`` upward from ``ceil(2 sqrt n)`` until ``s^2 - 4n`` is a square.

    Returns ``(q, p, s)`` with ``q <= p`` and ``q + p == s``, or None for primes.
    """
    hit = _fermat(n)
    return None if hit is None else hit[:3]


def trial_division_report(n: int) -> BaselineReport | None:
    t0 = time.perf_counter_ns()
    hit = _trial(n)
    dt = time.perf_counter_ns() - t0
    if hit is None:
        return None
    return BaselineReport(n, hit[0], hit[1], hit[2], dt, "trial")


def fermat_report(n: int) -> BaselineReport | None:
    t0 = time.perf_counter_ns()
    hit = _fermat(n)
    dt = time.perf_counter_ns() - t0
    if hit is None:
        return None
    q, p, _, tried = hit
    return BaselineReport(n, q, p, tried, dt, "fermat")
