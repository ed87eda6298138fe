"""Compiled inner loops over dense integer numerator vectors.

Both kernels accumulate Python integers (arbitrary precision) but run the
index bookkeeping in C. Tables come from :mod:`posgen.kernels`.
"""


def cauchy(list a, list b, const long long[:] row_ptr, const long long[:] cols,
           const long long[:] tgts, Py_ssize_t size):
    cdef list c = [0] * size
    cdef Py_ssize_t i, p, j, k
    cdef Py_ssize_t rows = min(row_ptr.shape[0] - 1, len(a))
    cdef Py_ssize_t nb = len(b)
    cdef object ai, bj
    for i in range(rows):
        ai = a[i]
        if not ai:
            continue
        for p in range(row_ptr[i], row_ptr[i + 1]):
            j = cols[p]
            if j >= nb:
                continue
            bj = b[j]
            if bj:
                k = tgts[p]
                c[k] = c[k] + ai * bj
    return c


def act(list a, list poly, const long long[:] row_ptr, const long long[:] srcs,
        const long long[:] tgts, list weights, Py_ssize_t size):
    cdef list r = [0] * size
    cdef Py_ssize_t i, p, s, k
    cdef Py_ssize_t rows = min(row_ptr.shape[0] - 1, len(a))
    cdef object ai, ps
    for i in range(rows):
        ai = a[i]
        if not ai:
            continue
        for p in range(row_ptr[i], row_ptr[i + 1]):
            s = srcs[p]
            ps = poly[s]
            if ps:
                k = tgts[p]
                r[k] = r[k] + ai * ps * weights[p]
    return r
