# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: pruned window counting and exact integer rank."""
import numpy as np

from libc.stdlib cimport llabs

cdef extern from *:
    """
    #include <limits.h>
    static inline int qb_mul_sub(long long a, long long x, long long b,
                                 long long y, long long *out) {
        long long t1, t2;
        if (__builtin_mul_overflow(a, x, &t1)) return 1;
        if (__builtin_mul_overflow(b, y, &t2)) return 1;
        if (__builtin_sub_overflow(t1, t2, out)) return 1;
        return *out == LLONG_MIN;
    }
    """
    int qb_mul_sub(long long a, long long x, long long b, long long y,
                   long long *out) nogil


cdef long long _gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _walk(const long long* w, const long long* suffix, Py_ssize_t n,
                Py_ssize_t start, Py_ssize_t size, long long total,
                long long lo, long long hi, long long* counts) noexcept nogil:
    cdef Py_ssize_t j
    cdef long long t
    for j in range(start, n):
        t = total + w[j]
        if t >= hi:
            break
        if total + suffix[j] < lo:
            break
        if t >= lo:
            counts[size] += 1
        _walk(w, suffix, n, j + 1, size + 1, t, lo, hi, counts)


def count_window(weights, long long lo, long long hi):
    """Count subsets by size with weight sum in [lo, hi); weights ascending."""
    cdef long long[::1] w = np.ascontiguousarray(weights, dtype=np.longlong)
    cdef Py_ssize_t n = w.shape[0]
    cdef long long[::1] suffix = np.zeros(n + 1, dtype=np.longlong)
    cdef long long[::1] counts = np.zeros(max(n, 1), dtype=np.longlong)
    cdef Py_ssize_t i
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + w[i]
    if n:
        with nogil:
            _walk(&w[0], &suffix[0], n, 0, 0, 0, lo, hi, &counts[0])
    return [int(counts[i]) for i in range(n)]


def matrix_rank(matrix):
    """Rank over the rationals by fraction-free elimination in int64.

    Raises OverflowError if an intermediate entry leaves the int64 range.
    """
    cdef long long[:, ::1] a = np.array(matrix, dtype=np.longlong, order="C", ndmin=2)
    cdef Py_ssize_t rows = a.shape[0], cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long best, v, pv, f, g, pm, fm, tmp, content
    cdef int overflow = 0
    if rows == 0 or cols == 0:
        return 0
    with nogil:
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            best = 0
            for i in range(r, rows):
                v = llabs(a[i, c])
                if v != 0 and (piv < 0 or v < best):
                    piv = i
                    best = v
                    if v == 1:
                        break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            pv = a[r, c]
            for i in range(r + 1, rows):
                f = a[i, c]
                if f == 0:
                    continue
                g = _gcd(llabs(pv), llabs(f))
                pm = pv // g
                fm = f // g
                a[i, c] = 0
                content = 0
                for j in range(c + 1, cols):
                    if qb_mul_sub(pm, a[i, j], fm, a[r, j], &tmp):
                        overflow = 1
                        break
                    a[i, j] = tmp
                    if tmp != 0:
                        content = _gcd(content, llabs(tmp))
                if overflow:
                    break
                if content > 1:
                    for j in range(c + 1, cols):
                        a[i, j] = a[i, j] // content
            if overflow:
                break
            r += 1
    if overflow:
        raise OverflowError("int64 overflow during elimination")
    return r
