"""Moment sequences, their correspondence with operators, and exact PSD verdicts.

A sequence ``s`` corresponds to the operator with coefficients
``q_alpha = s_alpha / alpha!``. An operator can only preserve nonnegativity if
its sequence is a moment sequence, so a moment matrix that is not positive
semidefinite refutes the operator. The converse does not hold at finite
truncation: :data:`CONSISTENT` verdicts are necessary-only evidence.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    DimensionError,
    MomentSequence,
    TruncatedSeries,
    TruncationError,
    basis,
    format_scalar,
    multi_factorial,
    to_scalar,
)
from .liegroup import mul

VIOLATED = "violated"
CONSISTENT = "consistent"


def d_map(s):
    """Operator with ``q_alpha = s_alpha / alpha!``."""
    coeffs = {alpha: c / multi_factorial(alpha) for alpha, c in s.items()}
    return TruncatedSeries._trusted(s.n, s.d, coeffs)


def d_inv(t):
    """Sequence with ``s_alpha = alpha! * q_alpha``."""
    coeffs = {alpha: c * multi_factorial(alpha) for alpha, c in t.items()}
    return MomentSequence._trusted(t.n, t.d, coeffs)


def unit_sequence(n, d):
    return MomentSequence.one(n, d)


def seq_convolve(s, t):
    """Sequence convolution, transported through the operator product."""
    if s.n != t.n:
        raise DimensionError(f"variable counts differ: {s.n} vs {t.n}")
    return d_inv(mul(d_map(s), d_map(t)))


@dataclass(frozen=True)
class MomentMatrix:
    """Symmetric matrix ``M[alpha, beta] = s_(alpha + beta)`` over ``|alpha| <= level``."""

    n: int
    level: int
    basis: tuple
    entries: tuple

    @property
    def size(self):
        return len(self.basis)

    def rows(self):
        return [list(row) for row in self.entries]


def moment_matrix(s, k):
    if k < 0:
        raise ValueError("level must be >= 0")
    if 2 * k > s.d:
        raise TruncationError(f"level {k} needs degree {2 * k} data, sequence has {s.d}")
    rows = basis(s.n, k)
    entries = tuple(
        tuple(s.coeff(tuple(a + b for a, b in zip(alpha, beta))) for beta in rows)
        for alpha in rows
    )
    return MomentMatrix(s.n, k, rows, entries)


@dataclass(frozen=True)
class PsdVerdict:
    """Outcome of an exact PSD test.

    ``violated`` verdicts carry a rational ``witness`` with
    ``witness^T M witness = value < 0``. ``consistent`` verdicts carry the
    nonzero LDL^T pivots and only say that no violation exists at this level.
    """

    tag: str
    level: int
    witness: tuple = None
    value: Fraction = None
    pivots: tuple = field(default=(), compare=False)

    @property
    def violated(self):
        return self.tag == VIOLATED

    def to_json_obj(self):
        obj = {"verdict": self.tag, "level": self.level}
        if self.witness is not None:
            obj["witness"] = [format_scalar(x) for x in self.witness]
        return obj


def quadratic_form(m, v):
    """Exact ``v^T M v``."""
    total = Fraction(0)
    for i, vi in enumerate(v):
        if not vi:
            continue
        row = m[i]
        total += vi * sum((row[j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
    return total


def _sign(x):
    return 1 if x > 0 else -1


def psd_check(m, level=None):
    """Decide positive semidefiniteness exactly by symmetric LDL^T over the rationals.

    Accepts a :class:`MomentMatrix` or a square list of rationals. Pivots are
    taken on the diagonal; a negative diagonal entry, or a zero diagonal entry
    with a nonzero entry in its row, yields a witness vector immediately.
    """
    if isinstance(m, MomentMatrix):
        level = m.level if level is None else level
        rows = m.rows()
    else:
        rows = [[to_scalar(x) for x in row] for row in m]
        level = 0 if level is None else level
    size = len(rows)
    for i, row in enumerate(rows):
        if len(row) != size:
            raise DimensionError("matrix is not square")
        for j in range(i):
            if row[j] != rows[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")

    s = [list(row) for row in rows]
    # e[j] is the j-th transformed basis vector in original coordinates
    e = [[Fraction(int(i == j)) for i in range(size)] for j in range(size)]
    remaining = list(range(size))
    pivots = []

    def violated(vec):
        vec = tuple(vec)
        return PsdVerdict(VIOLATED, level, vec, quadratic_form(rows, vec))

    while remaining:
        for i in remaining:
            if s[i][i] < 0:
                return violated(e[i])
        for i in remaining:
            if s[i][i]:
                continue
            for j in remaining:
                c = s[i][j]
                if j == i or not c:
                    continue
                if s[j][j] == 0:
                    t = Fraction(1)
                    u = Fraction(-_sign(c))
                else:
                    t = -(s[j][j] + abs(c)) / c
                    u = Fraction(1)
                return violated(t * x + u * y for x, y in zip(e[i], e[j]))
        p = next((i for i in remaining if s[i][i] > 0), None)
        if p is None:
            break  # remaining block is identically zero
        piv = s[p][p]
        pivots.append(piv)
        remaining.remove(p)
        factors = {j: s[j][p] / piv for j in remaining if s[j][p]}
        for j, f in factors.items():
            e[j] = [x - f * y for x, y in zip(e[j], e[p])]
            for l in remaining:
                if s[p][l]:
                    s[j][l] -= f * s[p][l]
        for j in factors:
            s[j][p] = s[p][j] = Fraction(0)
    return PsdVerdict(CONSISTENT, level, pivots=tuple(pivots))


def check_preserver(t, k):
    """Refute ``t`` as a positivity preserver via its level-``k`` moment matrix."""
    if t.d < 2 * k:
        raise TruncationError(f"level {k} needs truncation {2 * k}, operator has {t.d}")
    return psd_check(moment_matrix(d_inv(t), k))

