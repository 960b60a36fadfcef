# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact linear-algebra kernels (see ``_kernels_py`` for the fallback).

Rank and determinant first run Bareiss elimination on 64-bit integers with
overflow checks; on overflow they restart on Python integers.
"""

from libc.stdlib cimport free, malloc


cdef extern from *:
    """
    static int mul_ovf(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int sub_ovf(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int mul_ovf(long long a, long long b, long long *r) nogil
    int sub_ovf(long long a, long long b, long long *r) nogil


cdef long long *_load(list m, Py_ssize_t nrows, Py_ssize_t ncols):
    """Copy into a C buffer, or return NULL if an entry does not fit."""
    cdef long long *buf = <long long *>malloc(nrows * ncols * sizeof(long long))
    cdef Py_ssize_t i, j
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = <list>m[i]
            for j in range(ncols):
                buf[i * ncols + j] = row[j]
    except OverflowError:
        free(buf)
        return NULL
    return buf


cdef int _rank_c(long long *a, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t *out) nogil:
    """Bareiss rank in place; returns 1 on overflow."""
    cdef Py_ssize_t rank = 0, col, i, j, piv_row
    cdef long long prev = 1, piv, f, t1, t2, x
    cdef long long *pr
    cdef long long *ri
    for col in range(ncols):
        if rank == nrows:
            break
        piv_row = -1
        for i in range(rank, nrows):
            if a[i * ncols + col] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != rank:
            for j in range(col, ncols):
                x = a[rank * ncols + j]
                a[rank * ncols + j] = a[piv_row * ncols + j]
                a[piv_row * ncols + j] = x
        pr = a + rank * ncols
        piv = pr[col]
        for i in range(rank + 1, nrows):
            ri = a + i * ncols
            f = ri[col]
            for j in range(col + 1, ncols):
                if mul_ovf(ri[j], piv, &t1) or mul_ovf(f, pr[j], &t2) or sub_ovf(t1, t2, &x):
                    return 1
                ri[j] = x // prev
            ri[col] = 0
        prev = piv
        rank += 1
    out[0] = rank
    return 0


cdef int _det_c(long long *a, Py_ssize_t n, long long *out) nogil:
    """Bareiss determinant in place; returns 1 on overflow."""
    cdef Py_ssize_t k, i, j
    cdef long long prev = 1, piv, f, t1, t2, x, sign = 1
    for k in range(n - 1):
        if a[k * n + k] == 0:
            i = k + 1
            while i < n and a[i * n + k] == 0:
                i += 1
            if i == n:
                out[0] = 0
                return 0
            for j in range(k, n):
                x = a[k * n + j]
                a[k * n + j] = a[i * n + j]
                a[i * n + j] = x
            sign = -sign
        piv = a[k * n + k]
        for i in range(k + 1, n):
            f = a[i * n + k]
            for j in range(k + 1, n):
                if mul_ovf(a[i * n + j], piv, &t1) or mul_ovf(f, a[k * n + j], &t2) or sub_ovf(t1, t2, &x):
                    return 1
                a[i * n + j] = x // prev
            a[i * n + k] = 0
        prev = piv
    out[0] = sign * a[n * n - 1]
    return 0


def bareiss_rank(rows):
    cdef list m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    cdef Py_ssize_t ncols = len(m[0])
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t rank = 0
    cdef long long *buf = _load(m, nrows, ncols)
    cdef int ovf
    if buf != NULL:
        with nogil:
            ovf = _rank_c(buf, nrows, ncols, &rank)
        free(buf)
        if not ovf:
            return rank
    return _rank_obj(m, nrows, ncols)


cdef _rank_obj(list m, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef Py_ssize_t rank = 0, col, i, j, piv_row
    cdef list pr, ri
    cdef object prev = 1, piv, f, x
    for col in range(ncols):
        if rank == nrows:
            break
        piv_row = -1
        for i in range(rank, nrows):
            if (<list>m[i])[col] != 0:
                piv_row = i
                break
        if piv_row < 0:
            continue
        if piv_row != rank:
            m[rank], m[piv_row] = m[piv_row], m[rank]
        pr = <list>m[rank]
        piv = pr[col]
        for i in range(rank + 1, nrows):
            ri = <list>m[i]
            f = ri[col]
            if f == 0:
                for j in range(col + 1, ncols):
                    x = ri[j]
                    if x:
                        ri[j] = x * piv // prev
            else:
                for j in range(col + 1, ncols):
                    ri[j] = (ri[j] * piv - f * pr[j]) // prev
            ri[col] = 0
        prev = piv
        rank += 1
    return rank


def bareiss_det(rows):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef list m = [list(r) for r in rows]
    for r in m:
        if len(r) != n:
            raise ValueError("matrix is not square")
    cdef long long *buf = _load(m, n, n)
    cdef long long val = 0
    cdef int ovf
    if buf != NULL:
        with nogil:
            ovf = _det_c(buf, n, &val)
        free(buf)
        if not ovf:
            return val
    return _det_obj(m, n)


cdef _det_obj(list m, Py_ssize_t n):
    cdef Py_ssize_t k, i, j
    cdef int sign = 1
    cdef object prev = 1, piv, f
    cdef list pk, ri
    for k in range(n - 1):
        if (<list>m[k])[k] == 0:
            for i in range(k + 1, n):
                if (<list>m[i])[k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = <list>m[k]
        piv = pk[k]
        for i in range(k + 1, n):
            ri = <list>m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * piv - f * pk[j]) // prev
            ri[k] = 0
        prev = piv
    return sign * (<list>m[n - 1])[n - 1]


def iterated_partial_sums(values, Py_ssize_t k, Py_ssize_t length):
    cdef list out = [0] * length
    cdef Py_ssize_t i, t
    cdef object acc
    for i, v in enumerate(values[:length]):
        out[i] = v
    for t in range(k):
        acc = 0
        for i in range(length):
            acc = acc + out[i]
            out[i] = acc
    return out
