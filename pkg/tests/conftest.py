import random
from fractions import Fraction

import pytest
import sympy

from posgen.algebra import Polynomial, TruncatedSeries, basis
from posgen.measures import AtomicMeasure


def rand_q(rng, bound=100):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_series(rng, n, d, const=None, density=1.0, bound=100, cls=TruncatedSeries):
    coeffs = {}
    for alpha in basis(n, d):
        if not any(alpha) and const is not None:
            coeffs[alpha] = const
        elif rng.random() < density:
            coeffs[alpha] = rand_q(rng, bound)
    return cls(n, d, coeffs)


def rand_group(rng, n, d, **kw):
    return rand_series(rng, n, d, const=1, **kw)


def rand_algebra(rng, n, d, **kw):
    return rand_series(rng, n, d, const=0, **kw)


def rand_poly(rng, n, d, **kw):
    return rand_series(rng, n, d, cls=Polynomial, **kw)


def rand_point(rng, n, bound=10):
    return tuple(rand_q(rng, bound) for _ in range(n))


def rand_measure(rng, n, max_atoms=4, signed=True, bound=5):
    k = rng.randint(1, max_atoms)
    atoms = [rand_point(rng, n, bound) for _ in range(k)]
    if signed:
        weights = [rand_q(rng, 10) for _ in range(k)]
    else:
        weights = [Fraction(rng.randint(1, 10), rng.randint(1, 10)) for _ in range(k)]
    return AtomicMeasure(n, atoms, weights)


# --- sympy bridge: an independent route for products, derivatives, evaluation

def symbols(n):
    return sympy.symbols(f"z1:{n + 1}")


def to_expr(arr, syms):
    return sum((sympy.Rational(c.numerator, c.denominator)
                * sympy.prod([s ** a for s, a in zip(syms, alpha)])
                for alpha, c in arr.items()), sympy.Integer(0))


def from_expr(expr, cls, n, d, syms):
    """Read coefficients of ``expr`` back, dropping terms above degree ``d``."""
    poly = sympy.Poly(sympy.expand(expr), *syms)
    coeffs = {}
    for monom, c in poly.terms():
        if sum(monom) <= d:
            coeffs[tuple(monom)] = Fraction(int(c.p), int(c.q))
    return cls(n, d, coeffs)


@pytest.fixture
def rng():
    return random.Random(20261016)
