"""Exact integer and rational primitives shared by every other module.

Everything here is exact. ``Rational`` is :class:`fractions.Fraction`, which
keeps values in lowest terms with a positive denominator.
"""
from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction

#: Valuation of zero.
INFINITY = math.inf

# Bases through 41 are deterministic below 3.3e24; through 37 only below 3.2e23.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def isqrt(m: int) -> int:
    """Floor of the square root of ``m``."""
    if m < 0:
        raise ValueError(f"isqrt of negative number {m}")
    return math.isqrt(m)


def is_perfect_square(m: int) -> int | None:
    """Return ``sqrt(m)`` if ``m`` is a nonnegative perfect square, else None."""
    if m < 0:
        return None
    # squares mod 16 are 0, 1, 4, 9
    if (0x0213 >> (m & 15)) & 1 == 0:
        return None
    r = math.isqrt(m)
    return r if r * r == m else None


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin below 3.3e24, trial division above."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        return _trial_is_prime(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _trial_is_prime(n: int) -> bool:
    if n % 2 == 0:
        return n == 2
    limit = math.isqrt(n)
    f = 3
    while f <= limit:
        if n % f == 0:
            return False
        f += 2
    return True


def p_adic_valuation(p: int, m: int) -> int | float:
    """Largest k with ``p**k | m``; :data:`INFINITY` when ``m == 0``.

    >>> p_adic_valuation(5, 75), p_adic_valuation(3, 75)
    (2, 1)
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m == 0:
        return INFINITY
    m = abs(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for g in (f, f + 2):
            while n % g == 0:
                out[g] = out.get(g, 0) + 1
                n //= g
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n``."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def is_odd_semiprime(n: int) -> bool:
    """True for ``n = p*q`` with ``p != q`` odd primes."""
    if n % 2 == 0:
        return False
    f = factorize(n)
    return len(f) == 2 and all(e == 1 for e in f.values())


def odd_semiprimes(lo: int, hi: int) -> list[int]:
    """Odd semiprimes with distinct factors in ``[lo, hi)``, ascending."""
    if hi <= lo:
        return []
    spf = smallest_prime_factors(hi)
    out = []
    for n in range(max(lo, 3) | 1, hi, 2):
        p = spf[n]
        q = n // p
        if q != p and q > 1 and spf[q] == q:
            out.append(n)
    return out


def smallest_prime_factors(limit: int) -> list[int]:
    """Sieve: ``spf[m]`` is the least prime factor of ``m`` for ``2 <= m < limit``."""
    spf = list(range(limit))
    for i in range(2, math.isqrt(max(limit - 1, 0)) + 1):
        if spf[i] == i:
            for j in range(i * i, limit, i):
                if spf[j] == j:
                    spf[j] = i
    return spf
