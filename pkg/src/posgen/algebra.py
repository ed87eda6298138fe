"""Exact scalars, multi-indices and dense-by-degree coefficient containers.

Every coefficient is a :class:`fractions.Fraction`. Containers store a sparse
map from multi-index to nonzero coefficient; the canonical index order is
graded-lexicographic (total degree first, then ``x1 > x2 > ... > xn``), so the
basis of degree ``<= d`` is a prefix of the basis of degree ``<= d + 1``.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
import json


class PosgenError(Exception):
    """Base class for domain errors raised by this package."""

    code = "domain-error"


class DimensionError(PosgenError, ValueError):
    code = "dimension-mismatch"


class TruncationError(PosgenError, ValueError):
    code = "insufficient-truncation"


class NotGroupElementError(PosgenError, ValueError):
    code = "not-a-group-element"


class NotAlgebraElementError(PosgenError, ValueError):
    code = "not-an-algebra-element"


class NormalizationError(PosgenError, ValueError):
    code = "invalid-normalization"


class MalformedInputError(PosgenError, ValueError):
    code = "malformed-input"


# ---------------------------------------------------------------- scalars

def to_scalar(value):
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3"``, ``"-1/2"`` or
    ``"0.25"``. Floats and bools are refused so that nothing rounds silently.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInputError(f"not a rational: {value!r}") from exc
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def format_scalar(q):
    """Canonical ``p/q`` string (``"3"``, ``"-1/2"``)."""
    return str(Fraction(q))


def to_point(values, n=None):
    point = tuple(to_scalar(v) for v in values)
    if n is not None and len(point) != n:
        raise DimensionError(f"point has {len(point)} coordinates, expected {n}")
    return point


# ---------------------------------------------------------- multi-indices

def grlex_key(alpha):
    return (sum(alpha), tuple(-a for a in alpha))


def check_multi_index(alpha, n):
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n:
        raise DimensionError(f"multi-index {alpha} has length {len(alpha)}, expected {n}")
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {alpha} has a negative entry")
    return alpha


@lru_cache(maxsize=None)
def basis(n, d):
    """All multi-indices of length ``n`` and total degree ``<= d`` in grlex order."""
    if n < 1:
        raise ValueError("need at least one variable")
    if d < 0:
        return ()
    out = []
    for deg in range(d + 1):
        out.extend(sorted(_compositions(n, deg), key=grlex_key))
    return tuple(out)


def _compositions(n, deg):
    if n == 1:
        return [(deg,)]
    return [(first,) + rest
            for first in range(deg, -1, -1)
            for rest in _compositions(n - 1, deg - first)]


@lru_cache(maxsize=None)
def index_map(n, d):
    return {alpha: i for i, alpha in enumerate(basis(n, d))}


def basis_size(n, d):
    return comb(n + d, n) if d >= 0 else 0


def multi_factorial(alpha):
    out = 1
    for a in alpha:
        out *= factorial(a)
    return out


def monomial_power(point, alpha):
    out = Fraction(1)
    for x, a in zip(point, alpha):
        if a:
            out *= x ** a
    return out


def monomial_name(alpha, symbol="x"):
    if not any(alpha):
        return "1"
    n = len(alpha)
    parts = []
    for i, a in enumerate(alpha):
        if a == 0:
            continue
        var = symbol if n == 1 else f"{symbol}{i + 1}"
        parts.append(var if a == 1 else f"{var}^{a}")
    return "*".join(parts)


# ------------------------------------------------------------- containers

class GradedArray:
    """Immutable coefficients indexed by multi-indices with ``|alpha| <= d``.

    Missing keys mean zero and explicit zeros are never stored, so equality is
    a plain comparison of the stored maps.
    """

    kind = "array"
    symbol = "x"
    __slots__ = ("n", "d", "_coeffs", "_hash")

    def __init__(self, n, d, coeffs=None):
        n = int(n)
        d = int(d)
        if n < 1:
            raise ValueError("variable count must be >= 1")
        if d < 0:
            raise ValueError("truncation degree must be >= 0")
        clean = {}
        for alpha, c in (coeffs or {}).items():
            alpha = check_multi_index(alpha, n)
            if sum(alpha) > d:
                raise TruncationError(f"index {alpha} exceeds truncation degree {d}")
            c = to_scalar(c)
            if c:
                clean[alpha] = clean.get(alpha, 0) + c
                if not clean[alpha]:
                    del clean[alpha]
        self.n = n
        self.d = d
        self._coeffs = clean
        self._hash = None

    @classmethod
    def _trusted(cls, n, d, coeffs):
        # Skips validation; callers guarantee canonical, in-range input.
        obj = cls.__new__(cls)
        obj.n = n
        obj.d = d
        obj._coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n, d):
        return cls._trusted(n, d, {})

    @classmethod
    def one(cls, n, d):
        return cls._trusted(n, d, {(0,) * n: Fraction(1)})

    @classmethod
    def monomial(cls, n, d, alpha, coeff=1):
        return cls(n, d, {tuple(alpha): coeff})

    @classmethod
    def from_dense(cls, n, d, values):
        """Build from values listed in the grlex basis of ``(n, d)``."""
        values = list(values)
        if len(values) > basis_size(n, d):
            raise TruncationError("too many dense values for this basis")
        coeffs = {}
        for alpha, v in zip(basis(n, d), values):
            v = to_scalar(v)
            if v:
                coeffs[alpha] = v
        return cls._trusted(n, d, coeffs)

    @classmethod
    def from_univariate(cls, values, d=None):
        """Shorthand for ``n = 1``: ``values[k]`` is the coefficient of degree k."""
        values = list(values)
        if d is None:
            d = max(len(values) - 1, 0)
        return cls.from_dense(1, d, values)

    def coeff(self, alpha):
        return self._coeffs.get(tuple(alpha), Fraction(0))

    def __getitem__(self, alpha):
        if isinstance(alpha, int):
            alpha = (alpha,)
        return self.coeff(alpha)

    def terms(self):
        """``(alpha, coeff)`` pairs of the nonzero terms in grlex order."""
        return sorted(self._coeffs.items(), key=lambda item: grlex_key(item[0]))

    def items(self):
        return self._coeffs.items()

    def dense(self, d=None):
        d = self.d if d is None else d
        return [self._coeffs.get(alpha, Fraction(0)) for alpha in basis(self.n, d)]

    def int_vector(self, d=None):
        """Dense integer numerators and one common denominator, over degree ``<= d``."""
        d = self.d if d is None else d
        den = 1
        for alpha, c in self._coeffs.items():
            if sum(alpha) <= d and c.denominator != 1:
                den = den * c.denominator // _gcd(den, c.denominator)
        nums = []
        for alpha in basis(self.n, d):
            c = self._coeffs.get(alpha)
            nums.append(0 if c is None else c.numerator * (den // c.denominator))
        return nums, den

    @classmethod
    def from_int_vector(cls, n, d, nums, den):
        coeffs = {}
        for alpha, num in zip(basis(n, d), nums):
            if num:
                coeffs[alpha] = Fraction(num, den)
        return cls._trusted(n, d, coeffs)

    def degree(self):
        """Largest total degree with a nonzero coefficient (``-1`` for zero)."""
        return max((sum(alpha) for alpha in self._coeffs), default=-1)

    def is_zero(self):
        return not self._coeffs

    def constant(self):
        return self._coeffs.get((0,) * self.n, Fraction(0))

    def truncate(self, d):
        if d > self.d:
            raise TruncationError(f"cannot raise truncation from {self.d} to {d}")
        coeffs = {a: c for a, c in self._coeffs.items() if sum(a) <= d}
        return type(self)._trusted(self.n, d, coeffs)

    def scale(self, c):
        c = to_scalar(c)
        if not c:
            return type(self).zero(self.n, self.d)
        return type(self)._trusted(self.n, self.d, {a: c * v for a, v in self._coeffs.items()})

    def map_coeffs(self, fn):
        """New array with ``fn(alpha, coeff)`` for every stored term."""
        coeffs = {}
        for alpha, c in self._coeffs.items():
            v = to_scalar(fn(alpha, c))
            if v:
                coeffs[alpha] = v
        return type(self)._trusted(self.n, self.d, coeffs)

    def recast(self, cls):
        """Same coefficients viewed as another container type."""
        return cls._trusted(self.n, self.d, dict(self._coeffs))

    def __add__(self, other):
        if not isinstance(other, GradedArray):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, GradedArray):
            return NotImplemented
        return add(self, other.scale(-1))

    def __neg__(self):
        return self.scale(-1)

    def __rmul__(self, c):
        if isinstance(c, GradedArray):
            return NotImplemented
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, GradedArray):
            return NotImplemented
        return (self.kind == other.kind and self.n == other.n and self.d == other.d
                and self._coeffs == other._coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.kind, self.n, self.d, frozenset(self._coeffs.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, d={self.d}, {self})"

    def __str__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for alpha, c in self.terms():
            name = monomial_name(alpha, self.symbol)
            parts.append(format_scalar(c) if name == "1" else f"({c})*{name}")
        return " + ".join(parts)


class TruncatedSeries(GradedArray):
    """Constant-coefficient operator ``sum q_alpha * d^alpha`` truncated at degree d."""

    kind = "series"
    symbol = "D"
    __slots__ = ()


class Polynomial(GradedArray):
    """Element of the polynomial space of total degree ``<= d``."""

    kind = "poly"
    __slots__ = ()


class MomentSequence(GradedArray):
    """Truncated real sequence ``(s_alpha)`` for ``|alpha| <= d``."""

    kind = "moments"
    symbol = "s"
    __slots__ = ()


KINDS = {cls.kind: cls for cls in (TruncatedSeries, Polynomial, MomentSequence)}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ------------------------------------------------------------- operations

def add(a, b):
    """Coefficientwise sum, truncated at ``min(a.d, b.d)``."""
    if a.n != b.n:
        raise DimensionError(f"variable counts differ: {a.n} vs {b.n}")
    d = min(a.d, b.d)
    coeffs = {alpha: c for alpha, c in a.items() if sum(alpha) <= d}
    for alpha, c in b.items():
        if sum(alpha) > d:
            continue
        v = coeffs.get(alpha, 0) + c
        if v:
            coeffs[alpha] = v
        else:
            coeffs.pop(alpha, None)
    return type(a)._trusted(a.n, d, coeffs)


def linear_combination(pairs):
    """``sum c_i * a_i`` for ``(c_i, a_i)`` pairs, min-truncated."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty linear combination")
    out = pairs[0][1].scale(pairs[0][0])
    for c, a in pairs[1:]:
        out = add(out, a.scale(c))
    return out


def evaluate(p, x):
    """Exact value of ``p`` at the rational point ``x``."""
    x = to_point(x, p.n)
    powers = [[Fraction(1)] for _ in range(p.n)]
    for i, xi in enumerate(x):
        row = powers[i]
        for _ in range(p.d):
            row.append(row[-1] * xi)
    total = Fraction(0)
    for alpha, c in p.items():
        term = c
        for i, a in enumerate(alpha):
            if a:
                term *= powers[i][a]
        total += term
    return total


def shift(p, y):
    """Polynomial ``q`` with ``q(x) = p(x + y)``, by binomial expansion."""
    y = to_point(y, p.n)
    if not any(y):
        return p
    coeffs = {}
    for beta, c in p.items():
        ranges = [range(b + 1) for b in beta]
        for gamma in product(*ranges):
            w = c
            for b, g, yi in zip(beta, gamma, y):
                if b != g:
                    w *= comb(b, g) * yi ** (b - g)
            if w:
                coeffs[gamma] = coeffs.get(gamma, 0) + w
    return type(p)(p.n, p.d, coeffs)


def substitute_scale(p, lam):
    """``x -> lam * x``: coefficient of ``x^alpha`` multiplied by ``lam^|alpha|``."""
    lam = to_scalar(lam)
    return p.map_coeffs(lambda alpha, c: c * lam ** sum(alpha))


# ------------------------------------------------------------------- JSON

def to_json_obj(a):
    return {
        "kind": a.kind,
        "n": a.n,
        "d": a.d,
        "terms": [{"alpha": list(alpha), "coeff": format_scalar(c)} for alpha, c in a.terms()],
    }


def from_json_obj(obj, expect=None):
    """Parse the ``{"kind", "n", "d", "terms"}`` schema.

    ``expect`` (a kind string or container class) is checked when the object
    carries a ``kind`` and supplied as the default when it does not.
    """
    if isinstance(expect, type):
        expect = expect.kind
    if not isinstance(obj, dict):
        raise MalformedInputError("expected a JSON object")
    try:
        kind = obj.get("kind", expect or "series")
        cls = KINDS[kind]
        n = obj["n"]
        d = obj["d"]
        terms = obj.get("terms", [])
        if not isinstance(n, int) or not isinstance(d, int):
            raise MalformedInputError("'n' and 'd' must be integers")
        coeffs = {}
        for term in terms:
            alpha = tuple(term["alpha"])
            if alpha in coeffs:
                raise MalformedInputError(f"duplicate index {list(alpha)}")
            coeffs[alpha] = to_scalar(term["coeff"])
    except (KeyError, TypeError) as exc:
        raise MalformedInputError(f"bad value object: {exc}") from exc
    if expect is not None and kind != expect:
        raise MalformedInputError(f"expected kind {expect!r}, got {kind!r}")
    try:
        return cls(n, d, coeffs)
    except (ValueError, TypeError) as exc:
        raise MalformedInputError(str(exc)) from exc


def dumps(obj):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def matrix_to_json(matrix):
    return [[format_scalar(x) for x in row] for row in matrix]


def matrix_from_json(rows):
    return [[to_scalar(x) for x in row] for row in rows]
