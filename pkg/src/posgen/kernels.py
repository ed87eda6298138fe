"""Index tables and backend selection for the two hot loops.

``cauchy`` is the truncated product of coefficient vectors and ``act`` applies
an operator to a polynomial. Both run on dense integer numerators over the
grlex basis; the compiled extension is used when it imports, otherwise the
pure-Python twins in ``_kernels_py``.
"""

from array import array
from functools import lru_cache
from math import factorial

from . import _kernels_py
from .algebra import basis, index_map

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _kernels_py}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"
_impl = BACKENDS[BACKEND]


def set_backend(name):
    """Route all later kernel calls through ``name``; returns the previous backend name."""
    global BACKEND, _impl
    if name not in BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}")
    previous = BACKEND
    BACKEND, _impl = name, BACKENDS[name]
    return previous


@lru_cache(maxsize=None)
def product_table(n, d):
    """CSR table: row ``i`` lists ``(j, k)`` with ``basis[i] + basis[j] = basis[k]``."""
    idx = index_map(n, d)
    rows = basis(n, d)
    row_ptr = array("q", [0])
    cols = array("q")
    tgts = array("q")
    for alpha in rows:
        deg_a = sum(alpha)
        for j, beta in enumerate(rows):
            if deg_a + sum(beta) > d:
                break  # grlex: all later betas have larger degree
            cols.append(j)
            tgts.append(idx[tuple(a + b for a, b in zip(alpha, beta))])
        row_ptr.append(len(cols))
    return row_ptr, cols, tgts


@lru_cache(maxsize=None)
def action_table(n, d):
    """CSR table: row ``alpha`` lists ``(beta, beta - alpha, beta!/(beta - alpha)!)``."""
    idx = index_map(n, d)
    rows = basis(n, d)
    row_ptr = array("q", [0])
    srcs = array("q")
    tgts = array("q")
    weights = []
    for alpha in rows:
        for j, beta in enumerate(rows):
            if any(b < a for a, b in zip(alpha, beta)):
                continue
            gamma = tuple(b - a for a, b in zip(alpha, beta))
            w = 1
            for b, g in zip(beta, gamma):
                w *= factorial(b) // factorial(g)
            srcs.append(j)
            tgts.append(idx[gamma])
            weights.append(w)
        row_ptr.append(len(srcs))
    return row_ptr, srcs, tgts, weights


def cauchy(a, b, n, d, backend=None):
    """Truncated product of dense integer vectors over the ``(n, d)`` basis."""
    impl = _impl if backend is None else BACKENDS[backend]
    row_ptr, cols, tgts = product_table(n, d)
    return impl.cauchy(list(a), list(b), row_ptr, cols, tgts, len(basis(n, d)))


def act(a, poly, n, d, backend=None):
    """Dense coefficients of ``sum a_alpha * d^alpha`` applied to ``poly``."""
    impl = _impl if backend is None else BACKENDS[backend]
    row_ptr, srcs, tgts, weights = action_table(n, d)
    return impl.act(list(a), list(poly), row_ptr, srcs, tgts, weights, len(basis(n, d)))
