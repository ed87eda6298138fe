from fractions import Fraction
from math import comb, factorial

import pytest

from conftest import rand_measure, rand_point, rand_poly, rand_q
from posgen.algebra import DimensionError, MalformedInputError, MomentSequence, Polynomial
from posgen.liegroup import apply, mul
from posgen.measures import (
    AtomicMeasure,
    apply_measure,
    binomial_convolve,
    convolve,
    gaussian_moments,
    measure_moments,
    minkowski_sum,
    poisson_moments,
    power_convolve,
)
from posgen.moments import d_map

P = Polynomial.from_univariate
M = MomentSequence.from_univariate
half = Fraction(1, 2)


def test_canonical_form():
    m = AtomicMeasure(1, [(1,), (0,), (1,), (2,)], [half, 1, half, 0])
    assert m.atoms == ((0,), (1,))
    assert m.weights == (1, 1)
    assert m == AtomicMeasure(1, [(1,), (0,)], [1, 1])
    assert AtomicMeasure(2, [(1, 1)], [0]) == AtomicMeasure.zero(2)
    with pytest.raises(DimensionError):
        AtomicMeasure(2, [(1,)], [1])


def test_moments_examples():
    assert measure_moments(AtomicMeasure.dirac((3,)), 4) == M([1, 3, 9, 27, 81])
    bern = AtomicMeasure(1, [(0,), (1,)], [half, half])
    assert measure_moments(bern, 3) == M([1, half, half, half])
    m = AtomicMeasure(2, [(1, 2)], [Fraction(1, 3)])
    s = measure_moments(m, 3)
    assert s[(2, 1)] == Fraction(2, 3) and s[(0, 3)] == Fraction(8, 3)


def test_convolution_examples():
    a, b = Fraction(2, 3), Fraction(-7, 5)
    assert convolve(AtomicMeasure.dirac((a,)), AtomicMeasure.dirac((b,))) == AtomicMeasure.dirac((a + b,))
    bern = AtomicMeasure(1, [(0,), (1,)], [half, half])
    binom = AtomicMeasure(1, [(0,), (1,), (2,)], [Fraction(1, 4), half, Fraction(1, 4)])
    assert convolve(bern, bern) == binom
    assert power_convolve(bern, 2) == binom
    # Binomial(5, 1/2) law
    assert power_convolve(bern, 5) == AtomicMeasure(
        1, [(k,) for k in range(6)], [Fraction(comb(5, k), 32) for k in range(6)])
    assert power_convolve(bern, 0) == AtomicMeasure.dirac((0,))


def test_convolution_support_is_minkowski_sum(rng):
    for _ in range(50):
        n = rng.randint(1, 2)
        mu = rand_measure(rng, n, signed=False)
        nu = rand_measure(rng, n, signed=False)
        # nonnegative weights cannot cancel
        assert convolve(mu, nu).support() == minkowski_sum(mu.support(), nu.support())
        assert convolve(mu, nu).total_mass() == mu.total_mass() * nu.total_mass()


def test_power_convolve_matches_repeated(rng):
    for _ in range(20):
        mu = rand_measure(rng, rng.randint(1, 2), max_atoms=3)
        k = rng.randint(0, 4)
        expected = AtomicMeasure.dirac((0,) * mu.n)
        for _ in range(k):
            expected = convolve(expected, mu)
        assert power_convolve(mu, k) == expected


def test_apply_measure_examples():
    a = Fraction(5, 4)
    p = P([1, -2, 0, 3])
    assert apply_measure(AtomicMeasure.dirac((a,)), p) == P([
        1 - 2 * a + 3 * a ** 3, -2 + 9 * a * a, 9 * a, 3])
    h = Fraction(2, 7)
    sym = AtomicMeasure(1, [(-h,), (h,)], [half, half])
    assert apply_measure(sym, P([0, 0, 1])) == P([h * h, 0, 1])


def test_apply_measure_matches_operator(rng):
    for _ in range(100):
        n = rng.randint(1, 2)
        mu = rand_measure(rng, n)
        p = rand_poly(rng, n, rng.randint(0, 5), density=0.6)
        assert apply_measure(mu, p) == apply(d_map(measure_moments(mu, p.d)), p)


def test_apply_measure_composition(rng):
    for _ in range(40):
        n = rng.randint(1, 2)
        mu, nu = rand_measure(rng, n, max_atoms=3), rand_measure(rng, n, max_atoms=3)
        p = rand_poly(rng, n, rng.randint(0, 4), density=0.6)
        assert apply_measure(convolve(mu, nu), p) == apply_measure(mu, apply_measure(nu, p))


def test_integration_matches_evaluation(rng):
    from posgen.algebra import evaluate
    for _ in range(30):
        mu = rand_measure(rng, 2)
        p = rand_poly(rng, 2, 3)
        x = rand_point(rng, 2)
        lhs = evaluate(apply_measure(mu, p), x)
        rhs = mu.integrate(lambda y: evaluate(p, tuple(a + b for a, b in zip(x, y))))
        assert lhs == rhs


def test_gaussian_moments():
    for t in (Fraction(1, 3), Fraction(2), Fraction(5, 7)):
        s = gaussian_moments([[2 * t]], 8)
        for k in range(5):
            # E X^{2k} = (2t)^k (2k - 1)!!
            dfact = factorial(2 * k) // (2 ** k * factorial(k))
            assert s[2 * k] == (2 * t) ** k * dfact
        assert all(s[j] == 0 for j in range(1, 9, 2))
    s = gaussian_moments([[1, half], [half, 2]], 4)
    # E[X^2 Y^2] = s11 s22 + 2 s12^2
    assert s[(2, 2)] == 2 + 2 * Fraction(1, 4)
    assert s[(1, 1)] == half and s[(3, 1)] == 3 * half


def _bell(k):
    # Bell triangle
    row = [1]
    out = [1]
    for _ in range(k):
        new = [row[-1]]
        for x in row:
            new.append(new[-1] + x)
        row = new
        out.append(row[0])
    return out


def test_poisson_moments_are_touchard():
    assert poisson_moments(1, [1], 7) == M(_bell(7))
    lam = Fraction(3, 2)
    s = poisson_moments(lam, [2], 3)
    # E N = lam, E N^2 = lam + lam^2, E N^3 = lam + 3 lam^2 + lam^3, scaled by c^k
    assert s == M([1, 2 * lam, 4 * (lam + lam ** 2), 8 * (lam + 3 * lam ** 2 + lam ** 3)])


def test_binomial_convolve_of_dirac_moments(rng):
    for _ in range(30):
        a, b = rand_q(rng, 10), rand_q(rng, 10)
        d = rng.randint(0, 6)
        s = M([a ** k for k in range(d + 1)])
        t = M([b ** k for k in range(d + 1)])
        assert binomial_convolve(s, t) == M([(a + b) ** k for k in range(d + 1)])


def test_d_map_is_multiplicative_on_measures(rng):
    for _ in range(50):
        n = rng.randint(1, 2)
        d = rng.randint(0, 5)
        mu, nu = rand_measure(rng, n), rand_measure(rng, n)
        lhs = d_map(measure_moments(convolve(mu, nu), d))
        assert lhs == mul(d_map(measure_moments(mu, d)), d_map(measure_moments(nu, d)))


def test_measure_json_roundtrip(rng):
    for _ in range(30):
        mu = rand_measure(rng, rng.randint(1, 3))
        assert AtomicMeasure.from_json_obj(mu.to_json_obj()) == mu
    with pytest.raises(MalformedInputError):
        AtomicMeasure.from_json_obj({"n": 1, "atoms": [[1]]})
    with pytest.raises(MalformedInputError):
        AtomicMeasure.from_json_obj({"n": 1, "atoms": [[1], [2]], "weights": ["1"]})
