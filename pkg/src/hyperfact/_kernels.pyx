# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled square-scan loops.

Same contract as :mod:`hyperfact._kernels_py`. Arguments outside the
fixed-width range are handed to the pure-Python versions.
"""
from libc.stdint cimport int64_t, uint64_t

from hyperfact import _kernels_py

cdef extern from *:
    """
    #include <math.h>
    #include <stdint.h>

    typedef unsigned __int128 hf_u128;
    typedef __int128 hf_i128;

    /* bit k set iff k is a square mod 64 */
    #define HF_SQ64 0x0202021202030213ULL

    static unsigned char hf_sq63[63], hf_sq65[65], hf_sq11[11];

    static void hf_init(void) {
        int i;
        for (i = 0; i < 63; i++) hf_sq63[(i * i) % 63] = 1;
        for (i = 0; i < 65; i++) hf_sq65[(i * i) % 65] = 1;
        for (i = 0; i < 11; i++) hf_sq11[(i * i) % 11] = 1;
    }

    static inline int hf_sq_u64(uint64_t x, uint64_t *root) {
        uint64_t r;
        if (!((HF_SQ64 >> (x & 63)) & 1)) return 0;
        if (!hf_sq63[x % 63] || !hf_sq65[x % 65] || !hf_sq11[x % 11]) return 0;
        r = (uint64_t) sqrt((double) x);
        while (r > 0 && (hf_u128) r * r > x) r--;
        while ((hf_u128) (r + 1) * (r + 1) <= x) r++;
        if ((hf_u128) r * r != x) return 0;
        *root = r;
        return 1;
    }

    /* x < 2**126 */
    static inline int hf_sq_u128(hf_u128 x, hf_u128 *root) {
        hf_u128 r;
        uint64_t r64;
        if ((x >> 64) == 0) {
            if (!hf_sq_u64((uint64_t) x, &r64)) return 0;
            *root = r64;
            return 1;
        }
        if (!((HF_SQ64 >> ((uint64_t) x & 63)) & 1)) return 0;
        r = (hf_u128) sqrtl((long double) x);
        if (r == 0) r = 1;
        r = (r + x / r) >> 1;
        while (r * r > x) r--;
        while ((r + 1) * (r + 1) <= x) r++;
        if (r * r != x) return 0;
        *root = r;
        return 1;
    }

    static int64_t hf_scan(uint64_t n, int64_t s0, int64_t step, int64_t count,
                           uint64_t min_root, uint64_t *root_out) {
        int64_t i;
        int64_t s_last = s0 + (count - 1) * step;
        int64_t lo = s0 < s_last ? s0 : s_last;
        int64_t hi = s0 < s_last ? s_last : s0;
        if (n < (1ULL << 60) && lo > -3037000000LL && hi < 3037000000LL) {
            int64_t s = s0, four_n = (int64_t) (4 * n), rad;
            uint64_t r;
            for (i = 0; i < count; i++, s += step) {
                rad = s * s - four_n;
                if (rad >= 0 && hf_sq_u64((uint64_t) rad, &r) && r >= min_root) {
                    *root_out = r;
                    return i;
                }
            }
            return -1;
        } else {
            hf_i128 s = s0, four_n = (hf_i128) 4 * n, rad;
            hf_u128 r;
            for (i = 0; i < count; i++, s += step) {
                rad = s * s - four_n;
                if (rad >= 0 && hf_sq_u128((hf_u128) rad, &r) && r >= min_root) {
                    *root_out = (uint64_t) r;
                    return i;
                }
            }
            return -1;
        }
    }

    /* next i in [i, i_hi] where f1 or f2 is a square; 0 if none.
       flags bit 0: f1 square, bit 1: f2 square. n < 2**24, i_hi < 2**26. */
    static int64_t hf_gamma_next(int64_t n, int64_t i, int64_t i_hi, int *flags) {
        hf_i128 N = n, I, v1, v2;
        hf_i128 c1 = 4 * (1 - N), c0 = N * N - 6 * N + 1;
        hf_i128 d2 = 4 * (N * N - 2 * N + 1);
        hf_i128 d1 = 4 * (3 * N * N - N * N * N - 3 * N + 1);
        hf_i128 d0 = N * N * N * N - 8 * N * N * N + 14 * N * N - 8 * N + 1;
        hf_u128 r;
        int a, b;
        for (; i <= i_hi; i++) {
            I = i;
            v1 = (4 * I + c1) * I + c0;
            v2 = (d2 * I + d1) * I + d0;
            a = v1 >= 0 && hf_sq_u128((hf_u128) v1, &r);
            b = v2 >= 0 && hf_sq_u128((hf_u128) v2, &r);
            if (a || b) {
                *flags = a | (b << 1);
                return i;
            }
        }
        return 0;
    }
    """
    void hf_init()
    int64_t hf_scan(uint64_t n, int64_t s0, int64_t step, int64_t count,
                    uint64_t min_root, uint64_t *root_out) nogil
    int64_t hf_gamma_next(int64_t n, int64_t i, int64_t i_hi, int *flags) nogil

hf_init()

cdef object _LIMIT = 1 << 62
cdef object _GAMMA_N_LIMIT = 1 << 24
cdef object _GAMMA_I_LIMIT = 1 << 26


def scan_radicand(n, s0, step, count, min_root=0):
    if count <= 0:
        return None
    s_last = s0 + (count - 1) * step
    if not (0 < n < _LIMIT and -_LIMIT < s0 < _LIMIT and -_LIMIT < s_last < _LIMIT
            and 0 <= min_root < _LIMIT and -_LIMIT < step < _LIMIT):
        return _kernels_py.scan_radicand(n, s0, step, count, min_root)
    cdef uint64_t r = 0
    cdef int64_t i
    cdef uint64_t c_n = n, c_min = min_root
    cdef int64_t c_s0 = s0, c_step = step, c_count = count
    with nogil:
        i = hf_scan(c_n, c_s0, c_step, c_count, c_min, &r)
    if i < 0:
        return None
    return i, r


def gamma_hits(n, i_lo, i_hi):
    if not (0 < n < _GAMMA_N_LIMIT and 0 < i_lo and i_hi < _GAMMA_I_LIMIT):
        return _kernels_py.gamma_hits(n, i_lo, i_hi)
    out = []
    cdef int flags = 0
    cdef int64_t c_n = n, i = i_lo, hi = i_hi
    while i <= hi:
        with nogil:
            i = hf_gamma_next(c_n, i, hi, &flags)
        if i == 0:
            break
        out.append((i, bool(flags & 1), bool(flags & 2)))
        i += 1
    return out
