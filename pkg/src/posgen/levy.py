"""Generators of positivity-preserving semigroups from Levy triplets.

A triplet ``(b, sigma, nu)`` (drift, PSD covariance, finite atomic Levy
measure away from the origin) determines the generator
``A = sum_{|alpha| >= 1} a_alpha / alpha! * d^alpha`` with

* ``a_{e_i} = b_i + sum_{|y| >= 1} w * y_i``
* ``a_{e_i + e_j} = sigma_ij + sum w * y_i * y_j``
* ``a_alpha = sum w * y^alpha`` for ``|alpha| >= 3``.

The grid probes below only refute membership; they never certify it.
"""

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    DimensionError,
    MalformedInputError,
    PosgenError,
    TruncatedSeries,
    TruncationError,
    basis,
    format_scalar,
    monomial_power,
    multi_factorial,
    to_point,
    to_scalar,
)
from .liegroup import dilate, exp, require_algebra
from .measures import AtomicMeasure
from .moments import check_preserver, psd_check


class TripletError(PosgenError, ValueError):
    code = "invalid-triplet"


@dataclass(frozen=True, init=False)
class LevyTriplet:
    b: tuple
    sigma: tuple
    nu: AtomicMeasure

    def __init__(self, b, sigma, nu=None):
        b = to_point(b)
        n = len(b)
        if n < 1:
            raise TripletError("drift vector is empty")
        sigma = tuple(tuple(to_scalar(x) for x in row) for row in sigma)
        if len(sigma) != n or any(len(row) != n for row in sigma):
            raise TripletError(f"sigma must be {n}x{n}")
        for i in range(n):
            for j in range(i):
                if sigma[i][j] != sigma[j][i]:
                    raise TripletError("sigma is not symmetric")
        verdict = psd_check(sigma)
        if verdict.violated:
            raise TripletError(f"sigma is not PSD (witness {list(map(str, verdict.witness))})")
        if nu is None:
            nu = AtomicMeasure.zero(n)
        if nu.n != n:
            raise TripletError(f"Levy measure has dimension {nu.n}, drift {n}")
        if any(w < 0 for w in nu.weights):
            raise TripletError("Levy measure has a negative weight")
        if any(not any(y) for y in nu.atoms):
            raise TripletError("Levy measure has an atom at the origin")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "nu", nu)

    @property
    def n(self):
        return len(self.b)

    def to_json_obj(self):
        return {
            "b": [format_scalar(x) for x in self.b],
            "sigma": [[format_scalar(x) for x in row] for row in self.sigma],
            "nu": self.nu.to_json_obj(),
        }

    @classmethod
    def from_json_obj(cls, obj):
        try:
            b = obj["b"]
            sigma = obj["sigma"]
            nu = obj.get("nu")
            nu = AtomicMeasure.from_json_obj(nu) if nu is not None else None
        except (KeyError, TypeError, AttributeError) as exc:
            raise MalformedInputError(f"bad triplet object: {exc}") from exc
        return cls(b, sigma, nu)


def combine_triplets(pairs):
    """Triplet of ``sum c_i * A_i`` for nonnegative ``c_i``: every component scales linearly."""
    pairs = [(to_scalar(c), t) for c, t in pairs]
    if not pairs:
        raise ValueError("nothing to combine")
    if any(c < 0 for c, _ in pairs):
        raise ValueError("cone combinations need nonnegative weights")
    n = pairs[0][1].n
    if any(t.n != n for _, t in pairs):
        raise DimensionError("triplets live in different dimensions")
    b = [sum((c * t.b[i] for c, t in pairs), Fraction(0)) for i in range(n)]
    sigma = [[sum((c * t.sigma[i][j] for c, t in pairs), Fraction(0)) for j in range(n)]
             for i in range(n)]
    nu = AtomicMeasure.zero(n)
    for c, t in pairs:
        nu = nu + t.nu.scale(c)
    return LevyTriplet(b, sigma, nu)


def generator_coefficients(t, d):
    """The raw ``a_alpha`` for ``1 <= |alpha| <= d`` (before division by ``alpha!``)."""
    if d < 1:
        raise TruncationError("generator needs truncation degree >= 1")
    n = t.n
    far = [(y, w) for y, w in t.nu if sum(c * c for c in y) >= 1]
    out = {}
    for alpha in basis(n, d):
        deg = sum(alpha)
        if deg == 0:
            continue
        if deg == 1:
            i = alpha.index(1)
            a = t.b[i] + sum((w * y[i] for y, w in far), Fraction(0))
        else:
            a = t.nu.integrate(lambda y: monomial_power(y, alpha))
            if deg == 2:
                i, j = [k for k, e in enumerate(alpha) for _ in range(e)]
                a += t.sigma[i][j]
        if a:
            out[alpha] = a
    return out


def generator_from_triplet(t, d):
    """Generator ``sum a_alpha / alpha! * d^alpha`` of the triplet, truncated at ``d``."""
    coeffs = {alpha: a / multi_factorial(alpha) for alpha, a in generator_coefficients(t, d).items()}
    return TruncatedSeries._trusted(t.n, d, coeffs)


def check_generator_grid(a, ts, k):
    """``check_preserver(exp(t * a), k)`` for every ``t`` in ``ts``, in input order."""
    require_algebra(a)
    if a.d < 2 * k:
        raise TruncationError(f"level {k} needs truncation {2 * k}, generator has {a.d}")
    out = []
    for t in ts:
        t = to_scalar(t)
        if t < 0:
            raise ValueError("semigroup times must be >= 0")
        out.append(check_preserver(exp(a.scale(t)), k))
    return out


def scaled_family_probe(a, k, lams, level):
    """Refutation probe over the dilation family ``lam^(k - j) a_j d^j`` (one variable)."""
    if a.n != 1:
        raise DimensionError("the dilation probe is univariate")
    require_algebra(a)
    out = []
    for lam in lams:
        out.append(check_preserver(exp(dilate(a, lam, k)), level))
    return out


def refuted(verdicts):
    """True when any verdict is a violation; such a verdict is a proof."""
    return any(v.violated for v in verdicts)
