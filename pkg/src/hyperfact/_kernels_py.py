"""Pure-Python versions of the hot loops. Same contract as ``_kernels.pyx``."""
from __future__ import annotations

from math import gcd, isqrt

# Same filter moduli as the compiled kernel.
_MODULI = (64, 63, 65, 11)
_SQUARES = {m: frozenset(x * x % m for x in range(m)) for m in _MODULI}
_SIEVE_MIN = 64


def _residue_mask(n: int, s0: int, step: int, count: int) -> bytes:
    """Byte ``i`` is 1 iff ``(s0 + i*step)^2 - 4n`` is a square modulo every
    filter modulus. Built from periodic patterns ANDed as big integers."""
    mask = -1
    for m in _MODULI:
        sq = _SQUARES[m]
        period = m // gcd(step, m)
        pat = bytes(((s0 + i * step) ** 2 - 4 * n) % m in sq for i in range(period))
        reps = count // period + 1
        # keep the leading ``count`` bytes
        mask &= int.from_bytes(pat * reps, "big") >> (8 * (reps * period - count))
    return mask.to_bytes(count, "big")


def scan_radicand(n: int, s0: int, step: int, count: int, min_root: int = 0):
    """First ``i`` in ``range(count)`` where ``(s0 + i*step)**2 - 4n`` is a
    perfect square ``r**2`` with ``r >= min_root``.

    Returns ``(i, r)`` or None.
    """
    four_n = 4 * n
    if count < _SIEVE_MIN:
        s = s0
        for i in range(count):
            rad = s * s - four_n
            if rad >= 0 and (0x0213 >> (rad & 15)) & 1:
                r = isqrt(rad)
                if r * r == rad and r >= min_root:
                    return i, r
            s += step
        return None
    mask = _residue_mask(n, s0, step, count)
    i = mask.find(1)
    while i >= 0:
        s = s0 + i * step
        rad = s * s - four_n
        if rad >= 0:
            r = isqrt(rad)
            if r * r == rad and r >= min_root:
                return i, r
        i = mask.find(1, i + 1)
    return None


def f1(n: int, i: int) -> int:
    return 4 * i * i + 4 * (1 - n) * i + n * n - 6 * n + 1


def f2(n: int, i: int) -> int:
    return (
        4 * (n * n - 2 * n + 1) * i * i
        + 4 * (3 * n * n - n**3 - 3 * n + 1) * i
        + n**4 - 8 * n**3 + 14 * n * n - 8 * n + 1
    )


def _square(v: int) -> bool:
    if v < 0:
        return False
    r = isqrt(v)
    return r * r == v


def gamma_hits(n: int, i_lo: int, i_hi: int):
    """``(i, f1_square, f2_square)`` for each ``i`` in ``[i_lo, i_hi]`` where
    either polynomial takes a square value."""
    out = []
    for i in range(i_lo, i_hi + 1):
        a = _square(f1(n, i))
        b = _square(f2(n, i))
        if a or b:
            out.append((i, a, b))
    return out
