from fractions import Fraction
from math import factorial

import pytest

from conftest import rand_measure, rand_q, rand_series
from posgen.algebra import MomentSequence, TruncatedSeries, TruncationError
from posgen.liegroup import exp, mul, unit
from posgen.measures import AtomicMeasure, binomial_convolve, measure_moments
from posgen.moments import (
    CONSISTENT,
    VIOLATED,
    check_preserver,
    d_inv,
    d_map,
    moment_matrix,
    psd_check,
    quadratic_form,
    seq_convolve,
    unit_sequence,
)

S = TruncatedSeries.from_univariate
M = MomentSequence.from_univariate


def heat(t, d):
    return exp(TruncatedSeries(1, d, {(2,): t}))


# ------------------------------------------------------------ d_map / d_inv

def test_d_map_of_dirac_is_translation():
    a = Fraction(-3, 2)
    s = M([a ** k for k in range(7)])
    assert d_map(s) == S([a ** k / factorial(k) for k in range(7)])
    assert d_map(s) == exp(S([0, a, 0, 0, 0, 0, 0]))


def test_d_map_unit_and_roundtrip(rng):
    assert d_map(unit_sequence(2, 3)) == unit(2, 3)
    for _ in range(50):
        n = rng.randint(1, 3)
        s = rand_series(rng, n, rng.randint(0, 5), cls=MomentSequence)
        assert d_inv(d_map(s)) == s


def test_d_inv_heat_sequence():
    for t in (Fraction(1, 3), Fraction(2), Fraction(-5, 7)):
        s = d_inv(heat(t, 4))
        assert s == M([1, 0, 2 * t, 0, 12 * t * t])
        # Gaussian N(0, 2t) oracle: E X^{2k} = (2t)^k (2k - 1)!!
        assert s[2] == 2 * t * 1 and s[4] == (2 * t) ** 2 * 3


def test_d_inv_examples():
    assert d_inv(exp(S([0, 0, 0, 1, 0, 0, 0]))) == M([1, 0, 0, 6, 0, 0, 360])
    assert d_inv(unit(2, 3)) == unit_sequence(2, 3)


# -------------------------------------------------------------- convolve

def test_seq_convolve_dirac_binomial():
    a, b = Fraction(2, 3), Fraction(-5, 4)
    sa = M([a ** k for k in range(6)])
    sb = M([b ** k for k in range(6)])
    assert seq_convolve(sa, sb) == M([(a + b) ** k for k in range(6)])


def test_seq_convolve_unit_and_laws(rng):
    for _ in range(30):
        n = rng.randint(1, 3)
        d = rng.randint(0, 5)
        s, t, u = (rand_series(rng, n, d, cls=MomentSequence) for _ in range(3))
        assert seq_convolve(s, unit_sequence(n, d)) == s
        assert seq_convolve(s, t) == seq_convolve(t, s)
        assert seq_convolve(seq_convolve(s, t), u) == seq_convolve(s, seq_convolve(t, u))
        assert seq_convolve(s, t) == binomial_convolve(s, t)
        assert d_map(seq_convolve(s, t)) == mul(d_map(s), d_map(t))


def test_seq_convolve_matches_measure_convolution(rng):
    from posgen.measures import convolve
    for _ in range(30):
        n = rng.randint(1, 2)
        mu, nu = rand_measure(rng, n), rand_measure(rng, n)
        d = rng.randint(0, 5)
        assert measure_moments(convolve(mu, nu), d) == seq_convolve(
            measure_moments(mu, d), measure_moments(nu, d))


# --------------------------------------------------------- moment matrix

def test_moment_matrix_examples():
    t = Fraction(3, 5)
    m = moment_matrix(M([1, 0, 2 * t, 0, 12 * t * t]), 2)
    assert m.rows() == [[1, 0, 2 * t], [0, 2 * t, 0], [2 * t, 0, 12 * t * t]]
    assert moment_matrix(unit_sequence(2, 4), 2).rows() == [
        [1 if i == j == 0 else 0 for j in range(6)] for i in range(6)]
    # level-2 matrix only reads s_0..s_4; s_6 = 360 does not enter
    m = moment_matrix(d_inv(exp(S([0, 0, 0, 1, 0, 0, 0]))), 2)
    assert m.rows() == [[1, 0, 0], [0, 0, 6], [0, 6, 0]]


def test_moment_matrix_multivariate_entries(rng):
    s = rand_series(rng, 2, 4, cls=MomentSequence)
    m = moment_matrix(s, 2)
    assert m.size == 6
    for i, a in enumerate(m.basis):
        for j, b in enumerate(m.basis):
            assert m.entries[i][j] == s[(a[0] + b[0], a[1] + b[1])] == m.entries[j][i]


def test_moment_matrix_needs_degree():
    with pytest.raises(TruncationError):
        moment_matrix(M([1, 0, 1]), 2)


# ------------------------------------------------------------- psd_check

def test_psd_heat_matrix():
    v = psd_check(moment_matrix(d_inv(heat(Fraction(1), 4)), 2))
    assert v.tag == CONSISTENT and v.level == 2
    prod = Fraction(1)
    for p in v.pivots:
        prod *= p
    assert prod == 16  # det = 16 t^3 at t = 1


def test_psd_exp_d3_witness():
    v = psd_check(moment_matrix(d_inv(exp(S([0, 0, 0, 1, 0, 0, 0]))), 2))
    assert v.tag == VIOLATED and v.level == 2
    assert v.witness == (0, 1, -1)
    assert v.value == -12


def test_psd_zero_matrix():
    assert psd_check([[0] * 3] * 3, level=1).tag == CONSISTENT


def test_psd_rejects_asymmetric():
    with pytest.raises(ValueError):
        psd_check([[1, 2], [3, 4]])


def _det(m):
    import sympy
    return sympy.Matrix(m).det()


def _is_psd_by_minors(m):
    # all principal minors >= 0 (independent oracle)
    from itertools import combinations
    size = len(m)
    for k in range(1, size + 1):
        for idx in combinations(range(size), k):
            if _det([[m[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True


def test_psd_verdicts_agree_with_principal_minors(rng):
    for _ in range(200):
        size = rng.randint(1, 4)
        # low-rank Gram matrices hit the zero-pivot paths often
        rank = rng.randint(0, size)
        vecs = [[rng.randint(-2, 2) for _ in range(rank)] for _ in range(size)]
        m = [[sum(a * b for a, b in zip(vecs[i], vecs[j])) for j in range(size)]
             for i in range(size)]
        if rng.random() < 0.5:
            i = rng.randrange(size)
            j = rng.randrange(size)
            delta = rng.randint(-3, 3)
            m[i][j] += delta
            if i != j:
                m[j][i] += delta
        v = psd_check(m)
        assert (v.tag == CONSISTENT) == _is_psd_by_minors(m)
        if v.violated:
            assert quadratic_form(m, v.witness) == v.value < 0


def test_check_preserver_examples():
    for t in (0, Fraction(1, 2), 1, Fraction(7, 2)):
        assert check_preserver(heat(Fraction(t), 6), 3).tag == CONSISTENT
    assert check_preserver(exp(S([0, 0, 0, 1, 0, 0, 0])), 2).violated
    v = check_preserver(exp(S([0, 0, -1])), 1)
    assert v.violated and v.value == -2
    with pytest.raises(TruncationError):
        check_preserver(heat(1, 4), 3)


def test_nonnegative_measures_pass(rng):
    for _ in range(60):
        n = rng.randint(1, 2)
        mu = rand_measure(rng, n, signed=False)
        d = 2 * rng.randint(0, 3)
        s = measure_moments(mu, d)
        for k in range(d // 2 + 1):
            assert psd_check(moment_matrix(s, k)).tag == CONSISTENT


def test_convex_combinations_stay_consistent(rng):
    for _ in range(40):
        n = rng.randint(1, 2)
        k = rng.randint(1, 2)
        s = measure_moments(rand_measure(rng, n, signed=False), 2 * k)
        t = measure_moments(AtomicMeasure.dirac([rand_q(rng, 5) for _ in range(n)]), 2 * k)
        assert psd_check(moment_matrix(s, k)).tag == CONSISTENT
        assert psd_check(moment_matrix(t, k)).tag == CONSISTENT
        for c in (Fraction(0), Fraction(1, 3), Fraction(rng.randint(0, 9), 9), Fraction(1)):
            mix = s.scale(c) + t.scale(1 - c)
            assert psd_check(moment_matrix(mix, k)).tag == CONSISTENT


def test_verdict_json():
    v = check_preserver(exp(S([0, 0, 0, 1, 0, 0, 0])), 2)
    assert v.to_json_obj() == {"verdict": "violated", "level": 2, "witness": ["0", "1", "-1"]}
    assert check_preserver(heat(1, 2), 1).to_json_obj() == {"verdict": "consistent", "level": 1}
