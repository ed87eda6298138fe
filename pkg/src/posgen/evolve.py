"""Closed-form polynomial evolution ``p_t = exp(tA) p_0`` and nonnegativity checks.

Univariate nonnegativity is decided exactly with Sturm sequences; for two or
more variables only grid sampling is offered, and a passing grid means no
violation was found, nothing more.
"""

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import (
    DimensionError,
    Polynomial,
    basis,
    evaluate,
    format_scalar,
    monomial_name,
    to_point,
    to_scalar,
)
from .liegroup import apply, exp, mul, require_algebra, unit


def _effective(a, p0):
    require_algebra(a)
    if a.n != p0.n:
        raise DimensionError(f"operator has {a.n} variables, polynomial {p0.n}")
    return a.truncate(p0.d) if a.d > p0.d else a


def evolve(a, p0, t):
    """Solution at time ``t`` of ``dp/dt = A p`` with ``p(0) = p0``."""
    t = to_scalar(t)
    a = _effective(a, p0)
    return apply(exp(a.scale(t)), p0)


def _check_times(ts):
    ts = [to_scalar(t) for t in ts]
    if any(t < 0 for t in ts):
        raise ValueError("times must be >= 0")
    if any(s > t for s, t in zip(ts, ts[1:])):
        raise ValueError("times must be nondecreasing")
    return ts


def trajectory(a, p0, ts):
    """``evolve(a, p0, t)`` for each ``t`` in ``ts``.

    ``exp(tA) p0 = sum_k t^k (A^k p0) / k!`` is a polynomial in ``t``; the
    vectors ``A^k p0 / k!`` are computed once and reused for every time.
    """
    ts = _check_times(ts)
    a = _effective(a, p0)
    layers = []
    power = unit(a.n, a.d)
    fact = 1
    for k in range(a.d + 1):
        if k:
            power = mul(power, a)
            fact *= k
            if power.is_zero():
                break
        layers.append(apply(power, p0).scale(Fraction(1, fact)))
    out = []
    for t in ts:
        acc = layers[0]
        tk = Fraction(1)
        for layer in layers[1:]:
            tk *= t
            acc = acc + layer.scale(tk)
        out.append(acc)
    return out


def trajectory_csv(ts, polys):
    """CSV text: header ``t`` then the grlex monomials, one row per time."""
    if not polys:
        raise ValueError("empty trajectory")
    n, d = polys[0].n, polys[0].d
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t"] + [monomial_name(alpha) for alpha in basis(n, d)])
    for t, p in zip(ts, polys):
        writer.writerow([format_scalar(t)] + [format_scalar(c) for c in p.dense()])
    return buf.getvalue()


def read_trajectory_csv(text):
    """Inverse of :func:`trajectory_csv` given the header's basis."""
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    size = len(header) - 1
    ts = [to_scalar(row[0]) for row in body]
    values = [[to_scalar(x) for x in row[1:]] for row in body]
    if any(len(v) != size for v in values):
        raise ValueError("ragged trajectory CSV")
    return ts, values


# ----------------------------------------------------------- univariate

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def _horner(c, x):
    acc = Fraction(0)
    for v in reversed(c):
        acc = acc * x + v
    return acc


def _deriv(c):
    return [k * v for k, v in enumerate(c)][1:]


def _divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    while len(num) >= len(den) and num:
        shift = len(num) - len(den)
        f = num[-1] / lead
        q[shift] = f
        for i, v in enumerate(den):
            num[i + shift] -= f * v
        num = _trim(num)
    return q, num


def _poly_gcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        _, r = _divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return [v / lead for v in a]


def squarefree_part(c):
    """``p / gcd(p, p')``: same real roots, each with multiplicity one."""
    c = _trim(c)
    if len(c) <= 1:
        return c
    g = _poly_gcd(c, _deriv(c))
    q, _ = _divmod(c, g)
    return q


def sturm_sequence(c):
    seq = [_trim(c), _trim(_deriv(c))]
    while seq[-1]:
        _, r = _divmod(seq[-2], seq[-1])
        seq.append([-v for v in r])
    return seq[:-1]


def _sign_changes(values):
    signs = [v > 0 for v in values if v]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(seq, a, b):
    """Distinct real roots in ``(a, b]`` of the first member of a Sturm sequence."""
    return (_sign_changes([_horner(p, a) for p in seq])
            - _sign_changes([_horner(p, b) for p in seq]))


def cauchy_bound(c):
    """``1 + max |c_i / c_n|``: every real root lies strictly inside."""
    c = _trim(c)
    lead = c[-1]
    return 1 + max((abs(v / lead) for v in c[:-1]), default=Fraction(0))


def _split_point(seq, a, b):
    for den in range(2, 64):
        for num in range(1, den):
            m = a + (b - a) * Fraction(num, den)
            if _horner(seq[0], m):
                return m
    raise ArithmeticError("no root-free split point")  # more roots than candidates


def isolate_real_roots(c):
    """Disjoint intervals ``(a, b)`` each holding exactly one distinct real root.

    Endpoints are never roots.
    """
    sqf = squarefree_part(c)
    if len(sqf) <= 1:
        return []
    seq = sturm_sequence(sqf)
    bound = cauchy_bound(sqf)
    out = []
    stack = [(-bound, bound)]
    while stack:
        a, b = stack.pop()
        k = count_roots(seq, a, b)
        if k == 0:
            continue
        if k == 1:
            out.append((a, b))
            continue
        m = _split_point(seq, a, b)
        stack.append((m, b))
        stack.append((a, m))
    return sorted(out)


@dataclass(frozen=True)
class NonnegResult:
    """Exact univariate verdict; ``witness`` is a point with ``p(witness) < 0``."""

    nonneg: bool
    reason: str
    interval: tuple = None
    witness: Fraction = None

    def __bool__(self):
        return self.nonneg


def nonneg_univariate(p):
    """Decide ``p >= 0`` on the real line exactly.

    ``p`` is nonnegative iff it is zero, or its leading coefficient is positive
    and it keeps its sign across each of its distinct real roots (i.e. every
    real root has even multiplicity). Roots are isolated on the squarefree part
    with Sturm sequences; a sign change across an isolating interval yields a
    rational witness of negativity.
    """
    if p.n != 1:
        raise DimensionError("exact nonnegativity is univariate only")
    c = _trim(p.dense())
    if not c:
        return NonnegResult(True, "zero polynomial")
    lead = c[-1]
    bound = cauchy_bound(c)
    if lead < 0:
        return NonnegResult(False, "negative leading coefficient", witness=bound)
    if len(c) % 2 == 0:
        return NonnegResult(False, "odd degree", witness=-bound)
    for a, b in isolate_real_roots(c):
        pa, pb = _horner(c, a), _horner(c, b)
        if pa < 0 or pb < 0:
            return NonnegResult(False, "sign change at a real root", (a, b), a if pa < 0 else b)
    return NonnegResult(True, "no sign change at any real root")


@dataclass(frozen=True)
class GridResult:
    """``ok`` means no sampled value was negative; it is not a proof."""

    ok: bool
    witness: tuple = None
    value: Fraction = None

    def __bool__(self):
        return self.ok


def grid_points(box, per_axis):
    axes = []
    for lo, hi in box:
        lo, hi = to_scalar(lo), to_scalar(hi)
        if lo > hi:
            raise ValueError(f"empty box side [{lo}, {hi}]")
        axes.append([lo + (hi - lo) * Fraction(i, per_axis - 1) for i in range(per_axis)])
    return product(*axes)


def nonneg_grid(p, box, per_axis):
    """Sample ``p`` on a rational grid over ``box`` (one ``(lo, hi)`` per variable)."""
    if per_axis < 2:
        raise ValueError("need at least two points per axis")
    box = list(box)
    if not box:
        raise ValueError("empty box")
    if len(box) != p.n:
        raise DimensionError(f"box has {len(box)} sides, polynomial {p.n} variables")
    for x in grid_points(box, per_axis):
        v = evaluate(p, x)
        if v < 0:
            return GridResult(False, to_point(x), v)
    return GridResult(True)


def univariate(coeffs, d=None):
    """Polynomial in one variable from ascending coefficients."""
    return Polynomial.from_univariate(coeffs, d)
