"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""


def cauchy(a, b, row_ptr, cols, tgts, size):
    c = [0] * size
    nb = len(b)
    for i in range(min(len(row_ptr) - 1, len(a))):
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
                c[k] += ai * bj
    return c


def act(a, poly, row_ptr, srcs, tgts, weights, size):
    r = [0] * size
    for i in range(min(len(row_ptr) - 1, len(a))):
        ai = a[i]
        if not ai:
            continue
        for p in range(row_ptr[i], row_ptr[i + 1]):
            ps = poly[srcs[p]]
            if ps:
                k = tgts[p]
                r[k] += ai * ps * weights[p]
    return r
