# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled fraction-free elimination.

Tries a checked int64 pass first; any overflow restarts the elimination on
Python integers.  Results are identical to ``_kernels_py``.
"""

cimport cython
from libc.stdlib cimport malloc, free
from libc.limits cimport LLONG_MIN

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(long long a, long long b, long long *res) nogil
    bint sub_ovf "__builtin_sub_overflow"(long long a, long long b, long long *res) nogil

cdef long long LIMIT = 1LL << 62


@cython.cdivision(True)
cdef int _echelon_ll(long long *a, Py_ssize_t m, Py_ssize_t n,
                     Py_ssize_t *pivots, Py_ssize_t *rank_out,
                     Py_ssize_t *swaps_out) noexcept nogil:
    cdef Py_ssize_t r = 0, c, p, i, j, k
    cdef long long prev = 1, piv, f, t1, t2, tmp
    cdef Py_ssize_t swaps = 0
    for c in range(n):
        if r == m:
            break
        p = r
        while p < m and a[p * n + c] == 0:
            p += 1
        if p == m:
            continue
        if p != r:
            for k in range(n):
                tmp = a[r * n + k]
                a[r * n + k] = a[p * n + k]
                a[p * n + k] = tmp
            swaps += 1
        piv = a[r * n + c]
        for i in range(r + 1, m):
            f = a[i * n + c]
            for j in range(c + 1, n):
                if mul_ovf(piv, a[i * n + j], &t1):
                    return 1
                if f != 0:
                    if mul_ovf(f, a[r * n + j], &t2):
                        return 1
                    if sub_ovf(t1, t2, &t1):
                        return 1
                if t1 == LLONG_MIN:
                    return 1
                # exact division, so C truncation agrees with floor
                a[i * n + j] = t1 / prev
            a[i * n + c] = 0
        prev = piv
        pivots[r] = c
        r += 1
    rank_out[0] = r
    swaps_out[0] = swaps
    return 0


cdef tuple _echelon_obj(list rows, Py_ssize_t ncols):
    cdef list a = [list(row) for row in rows]
    cdef Py_ssize_t m = len(a)
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef Py_ssize_t swaps = 0
    cdef list pivots = []
    cdef list rowr, rowi
    cdef object prev = 1, piv, f
    for c in range(ncols):
        if r == m:
            break
        p = r
        while p < m and not (<list>a[p])[c]:
            p += 1
        if p == m:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        rowr = <list>a[r]
        piv = rowr[c]
        for i in range(r + 1, m):
            rowi = <list>a[i]
            f = rowi[c]
            if f:
                for j in range(c + 1, ncols):
                    rowi[j] = (piv * rowi[j] - f * rowr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    rowi[j] = (piv * rowi[j]) // prev
            rowi[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, swaps, a


def echelon(rows, Py_ssize_t ncols):
    cdef list lrows = list(rows)
    cdef Py_ssize_t m = len(lrows)
    cdef Py_ssize_t i, j, rank = 0, swaps = 0
    cdef long long *buf
    cdef Py_ssize_t *piv
    cdef int status
    cdef object x
    if m == 0 or ncols == 0:
        return 0, [], 0, [list(row) for row in lrows]
    for i in range(m):
        for x in lrows[i]:
            if not (-LIMIT < x < LIMIT):
                return _echelon_obj(lrows, ncols)
    buf = <long long *> malloc(m * ncols * sizeof(long long))
    piv = <Py_ssize_t *> malloc(min(m, ncols) * sizeof(Py_ssize_t))
    if buf == NULL or piv == NULL:
        free(buf)
        free(piv)
        raise MemoryError()
    try:
        for i in range(m):
            row = lrows[i]
            for j in range(ncols):
                buf[i * ncols + j] = row[j]
        with nogil:
            status = _echelon_ll(buf, m, ncols, piv, &rank, &swaps)
        if status:
            return _echelon_obj(lrows, ncols)
        out = [[buf[i * ncols + j] for j in range(ncols)] for i in range(m)]
        return rank, [piv[i] for i in range(rank)], swaps, out
    finally:
        free(buf)
        free(piv)


def det(rows):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    rank, _, swaps, a = echelon(rows, n)
    if rank < n:
        return 0
    d = a[n - 1][n - 1]
    return -d if swaps % 2 else d
