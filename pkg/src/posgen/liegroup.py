"""The truncated operator group (constant term 1) and its algebra (constant term 0).

All products are truncated at ``min(a.d, b.d)`` as they are computed, never
formed at full degree first.
"""

from fractions import Fraction
from math import gcd

from . import kernels
from .algebra import (
    DimensionError,
    NormalizationError,
    NotAlgebraElementError,
    NotGroupElementError,
    Polynomial,
    TruncatedSeries,
    TruncationError,
    basis,
    index_map,
    to_scalar,
)


def _check_same_n(a, b):
    if a.n != b.n:
        raise DimensionError(f"variable counts differ: {a.n} vs {b.n}")


def _reduce(nums, den):
    g = gcd(den, *nums)
    if g > 1:
        return [x // g for x in nums], den // g
    return nums, den


def unit(n, d):
    """The identity operator."""
    return TruncatedSeries.one(n, d)


def mul(a, b):
    """Composition of two operators (the truncated Cauchy product)."""
    _check_same_n(a, b)
    d = min(a.d, b.d)
    na, da = a.int_vector(d)
    nb, db = b.int_vector(d)
    nums = kernels.cauchy(na, nb, a.n, d)
    return type(a).from_int_vector(a.n, d, nums, da * db)


def power(a, k):
    """Truncated ``k``-th power, ``a^0`` being the identity."""
    if k < 0:
        raise ValueError("negative power; use inverse()")
    out = unit(a.n, a.d)
    for _ in range(k):
        out = mul(out, a)
    return out


def require_group(a):
    if a.constant() != 1:
        raise NotGroupElementError(f"constant term is {a.constant()}, expected 1")


def require_algebra(a):
    if a.constant() != 0:
        raise NotAlgebraElementError(f"constant term is {a.constant()}, expected 0")


def inverse(a):
    """Unique ``b`` with ``a * b = 1``, solved degree by degree.

    ``b_gamma = -sum_{0 != alpha <= gamma} a_alpha * b_{gamma - alpha}``.
    """
    require_group(a)
    n, d = a.n, a.d
    idx = index_map(n, d)
    rest = [(alpha, c) for alpha, c in a.items() if any(alpha)]
    b = [Fraction(0)] * len(idx)
    b[0] = Fraction(1)
    for k, gamma in enumerate(basis(n, d)):
        if k == 0:
            continue
        acc = Fraction(0)
        for alpha, c in rest:
            if all(x <= g for x, g in zip(alpha, gamma)):
                prev = b[idx[tuple(g - x for g, x in zip(gamma, alpha))]]
                if prev:
                    acc += c * prev
        b[k] = -acc
    return type(a).from_dense(n, d, b)


def _series_sum(a, weight):
    """``sum_{k=0}^{d} weight(k) * a^k`` for nilpotent ``a`` (zero constant term)."""
    n, d = a.n, a.d
    an, ad = a.int_vector()
    size = len(an)
    term, tden = [1] + [0] * (size - 1), 1
    acc = [Fraction(weight(0))] + [Fraction(0)] * (size - 1)
    for k in range(1, d + 1):
        term = kernels.cauchy(term, an, n, d)
        term, tden = _reduce(term, tden * ad)
        if not any(term):
            break
        w = Fraction(weight(k))
        if w:
            scale = w / tden
            for i, x in enumerate(term):
                if x:
                    acc[i] += scale * x
    return type(a).from_dense(n, d, acc)


def exp(a):
    """``sum_{k=0}^{d} a^k / k!`` for ``a`` with zero constant term."""
    require_algebra(a)
    fact = [1]
    for k in range(1, a.d + 1):
        fact.append(fact[-1] * k)
    return _series_sum(a, lambda k: Fraction(1, fact[k]))


def log(a):
    """``-sum_{k=1}^{d} (1 - a)^k / k`` for ``a`` with constant term 1."""
    require_group(a)
    nil = a.map_coeffs(lambda alpha, c: 0 if not any(alpha) else -c)
    return _series_sum(nil, lambda k: Fraction(-1, k) if k else 0)


def dilate(a, lam, k):
    """Coefficient of ``d^alpha`` multiplied by ``lam^(k - |alpha|)``.

    ``k`` is the normalization degree and must dominate every degree carrying
    a nonzero coefficient.
    """
    lam = to_scalar(lam)
    if lam < 0:
        raise ValueError("dilation factor must be >= 0")
    if k < a.degree():
        raise NormalizationError(f"k={k} is below the top degree {a.degree()}")
    return a.map_coeffs(lambda alpha, c: c * lam ** (k - sum(alpha)))


def matrix_rep(a, d):
    """Matrix of ``p -> a p`` on polynomials of degree ``<= d`` (grlex monomial basis).

    Column ``j`` holds the coordinates of ``a`` applied to the ``j``-th monomial.
    """
    if a.d < d:
        raise TruncationError(f"operator truncated at {a.d} < {d}")
    rows = basis(a.n, d)
    idx = index_map(a.n, d)
    size = len(rows)
    m = [[Fraction(0)] * size for _ in range(size)]
    for j, beta in enumerate(rows):
        for alpha, c in a.items():
            if sum(alpha) > d or any(x > b for x, b in zip(alpha, beta)):
                continue
            w = 1
            for x, b in zip(alpha, beta):
                for f in range(b - x + 1, b + 1):
                    w *= f
            gamma = tuple(b - x for x, b in zip(alpha, beta))
            m[idx[gamma]][j] += c * w
    return m


def apply(a, p):
    """``sum q_alpha * d^alpha p`` computed exactly; the result lives in p's space."""
    if a.n != p.n:
        raise DimensionError(f"operator has {a.n} variables, polynomial {p.n}")
    if p.degree() > a.d:
        raise TruncationError(
            f"operator truncated at {a.d} cannot act on a polynomial of degree {p.degree()}")
    an, ad = a.int_vector(p.d)  # zero-padded when a.d < p.d
    pn, pd = p.int_vector()
    nums = kernels.act(an, pn, p.n, p.d)
    return Polynomial.from_int_vector(p.n, p.d, nums, ad * pd)


def matmul(x, y):
    size = len(y[0]) if y else 0
    return [[sum((row[k] * y[k][j] for k in range(len(y))), Fraction(0)) for j in range(size)]
            for row in x]


def identity_matrix(size):
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
