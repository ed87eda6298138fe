"""Finite atomic (possibly signed) measures on rational points.

Atoms are merged on exact coordinate equality and zero weights are dropped, so
two measures are equal exactly when their canonical atom lists agree.
"""

from fractions import Fraction
from math import comb

from .algebra import (
    DimensionError,
    MalformedInputError,
    MomentSequence,
    Polynomial,
    add,
    basis,
    format_scalar,
    monomial_power,
    shift,
    to_point,
    to_scalar,
)


class AtomicMeasure:
    """``sum_i w_i * delta_{y_i}`` with distinct rational atoms and nonzero weights."""

    __slots__ = ("n", "atoms", "weights")

    def __init__(self, n, atoms=(), weights=()):
        atoms = list(atoms)
        weights = list(weights)
        if len(atoms) != len(weights):
            raise ValueError("atoms and weights differ in length")
        merged = {}
        for y, w in zip(atoms, weights):
            y = to_point(y, n)
            merged[y] = merged.get(y, 0) + to_scalar(w)
        items = sorted((y, w) for y, w in merged.items() if w)
        self.n = n
        self.atoms = tuple(y for y, _ in items)
        self.weights = tuple(w for _, w in items)

    @classmethod
    def dirac(cls, point):
        point = to_point(point)
        return cls(len(point), [point], [1])

    @classmethod
    def zero(cls, n):
        return cls(n)

    def __iter__(self):
        return iter(zip(self.atoms, self.weights))

    def __len__(self):
        return len(self.atoms)

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return self.n == other.n and self.atoms == other.atoms and self.weights == other.weights

    def __hash__(self):
        return hash((self.n, self.atoms, self.weights))

    def __repr__(self):
        body = " + ".join(f"{w}*delta{tuple(str(c) for c in y)}" for y, w in self)
        return f"AtomicMeasure(n={self.n}, {body or '0'})"

    @property
    def nonnegative(self):
        return all(w > 0 for w in self.weights)

    def total_mass(self):
        return sum(self.weights, Fraction(0))

    def scale(self, c):
        c = to_scalar(c)
        return AtomicMeasure(self.n, self.atoms, [c * w for w in self.weights])

    def __add__(self, other):
        if self.n != other.n:
            raise DimensionError("measures live in different dimensions")
        return AtomicMeasure(self.n, self.atoms + other.atoms, self.weights + other.weights)

    def support(self):
        return frozenset(self.atoms)

    def integrate(self, fn):
        """``sum_i w_i * fn(y_i)``."""
        return sum((w * fn(y) for y, w in self), Fraction(0))

    def to_json_obj(self):
        return {
            "n": self.n,
            "atoms": [[format_scalar(c) for c in y] for y in self.atoms],
            "weights": [format_scalar(w) for w in self.weights],
        }

    @classmethod
    def from_json_obj(cls, obj):
        try:
            n = obj["n"]
            if not isinstance(n, int) or n < 1:
                raise MalformedInputError("'n' must be a positive integer")
            return cls(n, obj.get("atoms", []), obj.get("weights", []))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, MalformedInputError):
                raise
            raise MalformedInputError(f"bad measure object: {exc}") from exc


def _check_same_n(a, b):
    if a.n != b.n:
        raise DimensionError(f"dimensions differ: {a.n} vs {b.n}")


def measure_moments(m, d):
    """Truncated moments ``s_alpha = sum_i w_i * y_i^alpha``."""
    coeffs = {}
    for alpha in basis(m.n, d):
        v = m.integrate(lambda y: monomial_power(y, alpha))
        if v:
            coeffs[alpha] = v
    return MomentSequence._trusted(m.n, d, coeffs)


def convolve(a, b):
    """Push-forward of ``a x b`` under addition; colliding atoms are merged."""
    _check_same_n(a, b)
    atoms = []
    weights = []
    for x, wx in a:
        for y, wy in b:
            atoms.append(tuple(p + q for p, q in zip(x, y)))
            weights.append(wx * wy)
    return AtomicMeasure(a.n, atoms, weights)


def power_convolve(m, k):
    """``k``-fold self-convolution; ``k = 0`` gives the unit mass at the origin."""
    if k < 0:
        raise ValueError("convolution power must be >= 0")
    out = AtomicMeasure.dirac((0,) * m.n)
    base = m
    while k:
        if k & 1:
            out = convolve(out, base)
        k >>= 1
        if k:
            base = convolve(base, base)
    return out


def minkowski_sum(xs, ys):
    return frozenset(tuple(p + q for p, q in zip(x, y)) for x in xs for y in ys)


def apply_measure(m, p):
    """``x -> integral of p(x + y) dm(y)`` as a polynomial."""
    if m.n != p.n:
        raise DimensionError(f"measure has dimension {m.n}, polynomial {p.n}")
    out = Polynomial.zero(p.n, p.d)
    for y, w in m:
        out = add(out, shift(p, y).scale(w))
    return out


# --- moment constructors for continuous laws -------------------------------

def _double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def gaussian_moments(sigma, d):
    """Moments of the centred Gaussian with covariance ``sigma`` (Isserlis' theorem)."""
    sigma = [[to_scalar(x) for x in row] for row in sigma]
    n = len(sigma)
    coeffs = {}
    for alpha in basis(n, d):
        v = _isserlis(sigma, [i for i, a in enumerate(alpha) for _ in range(a)])
        if v:
            coeffs[alpha] = v
    return MomentSequence._trusted(n, d, coeffs)


def _isserlis(sigma, idx):
    # sum over perfect matchings of the index multiset
    if not idx:
        return Fraction(1)
    if len(idx) % 2:
        return Fraction(0)
    first, rest = idx[0], idx[1:]
    total = Fraction(0)
    for j, other in enumerate(rest):
        if sigma[first][other]:
            total += sigma[first][other] * _isserlis(sigma, rest[:j] + rest[j + 1:])
    return total


def _stirling2_row(k):
    row = [1]  # S(0, 0)
    for m in range(1, k + 1):
        new = [0] * (m + 1)
        for j in range(1, m + 1):
            new[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = new
    return row


def poisson_moments(lam, c, d):
    """Moments of ``N * c`` where ``N`` is Poisson with mean ``lam``.

    ``E[N^k]`` is the Touchard polynomial ``sum_j S(k, j) lam^j``.
    """
    lam = to_scalar(lam)
    c = to_point(c)
    n = len(c)
    raw = []
    for k in range(d + 1):
        row = _stirling2_row(k)
        raw.append(sum((s * lam ** j for j, s in enumerate(row)), Fraction(0)))
    coeffs = {}
    for alpha in basis(n, d):
        v = monomial_power(c, alpha) * raw[sum(alpha)]
        if v:
            coeffs[alpha] = v
    return MomentSequence._trusted(n, d, coeffs)


def binomial_convolve(s, t):
    """``(s * t)_gamma = sum_{alpha + beta = gamma} C(gamma, alpha) s_alpha t_beta``.

    Direct formula, kept independent of the operator route in
    :func:`posgen.moments.seq_convolve`.
    """
    _check_same_n(s, t)
    d = min(s.d, t.d)
    coeffs = {}
    for alpha, x in s.items():
        for beta, y in t.items():
            gamma = tuple(a + b for a, b in zip(alpha, beta))
            if sum(gamma) > d:
                continue
            w = 1
            for g, a in zip(gamma, alpha):
                w *= comb(g, a)
            coeffs[gamma] = coeffs.get(gamma, 0) + w * x * y
    return MomentSequence(s.n, d, coeffs)
