import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from flatpoly import constants
from flatpoly.families import random_littlewood, rudin_shapiro
from flatpoly.norms import (
    NormQuery,
    NormReport,
    exact_even_norm,
    flatness_deviation,
    grid_norm,
    mz_check,
    newman_ratio,
    norm_ratio,
)
from flatpoly.polycore import BinarySequence, IntPolynomial, dirichlet, from_bits, from_signs, split_littlewood


def test_exact_even_examples():
    assert exact_even_norm(IntPolynomial([1, 1]), 2).value == 6
    assert exact_even_norm(dirichlet(3), 2).value == 19
    for N in (1, 5, 40):
        assert exact_even_norm(dirichlet(N), 1, 1 / math.sqrt(N)).value == pytest.approx(1, abs=1e-14)
    rep = exact_even_norm(dirichlet(3), 3)
    assert rep.exact and rep.alias_error_bound == "exact"


def test_grid_norm_examples():
    r = grid_norm(dirichlet(3), NormQuery(2, 1, 3))
    assert r.exact and r.value == pytest.approx(math.sqrt(3), rel=1e-14)
    exact = exact_even_norm(dirichlet(4), 2).value ** 0.25
    assert grid_norm(dirichlet(4), NormQuery(4, 1, 13)).value == pytest.approx(exact, abs=1e-10)


@given(st.lists(st.sampled_from([-1, 1]), min_size=1, max_size=100))
def test_littlewood_unit_l2(signs):
    q = len(signs)
    r = grid_norm(IntPolynomial(signs), NormQuery(2, 1 / math.sqrt(q)))
    assert r.exact
    assert r.value == pytest.approx(1, abs=1e-12)


def test_non_even_not_exact_and_reports_bound():
    r = grid_norm(dirichlet(8), NormQuery(3))
    assert not r.exact and isinstance(r.alias_error_bound, float)
    assert r.grid_size == 4096
    assert NormReport.from_dict(r.to_dict()) == r


def test_quasi_norm_flag():
    assert grid_norm(dirichlet(4), NormQuery(0.5)).quasi
    assert not grid_norm(dirichlet(4), NormQuery(2)).quasi


def test_rejects_bad_alpha():
    with pytest.raises(ValueError):
        NormQuery(0)
    with pytest.raises(ValueError):
        NormQuery(-1.0)


def test_exact_grid_agreement_small_sample():
    gen = np.random.default_rng(0)
    for _ in range(40):
        n = int(gen.integers(1, 64))
        P = IntPolynomial(gen.integers(-3, 4, size=n))
        if not any(P.tolist()):
            continue
        for p in (2, 3, 4):
            exact = exact_even_norm(P, p).value ** (1 / (2 * p))
            grid = grid_norm(P, NormQuery(2 * p, 1, 4 * p * n)).value
            assert grid == pytest.approx(exact, rel=1e-9)


def test_monotone_in_alpha():
    P = from_signs(random_littlewood(50, 3))
    m = 8192
    vals = [grid_norm(P, NormQuery(a, 1 / math.sqrt(50), m)).value for a in (0.5, 1, 1.5, 2, 3, 4.5, 8)]
    assert all(x <= y + 1e-9 for x, y in zip(vals, vals[1:]))


def test_homogeneity():
    P = from_signs(random_littlewood(33, 1))
    base = grid_norm(P, NormQuery(3.3, 1.0, 2048)).value
    for s in (0.1, 2.5, 7.0):
        assert grid_norm(P, NormQuery(3.3, s, 2048)).value == pytest.approx(s * base, rel=1e-12)
    e = exact_even_norm(P, 3, 1.0).value
    assert exact_even_norm(P, 3, 0.5).value == pytest.approx(e * 0.5**6, rel=1e-12)


def test_flatness_monomial_zero():
    for a in (0.7, 2, 5.5):
        assert flatness_deviation(IntPolynomial([1]), 1, NormQuery(a)).value == pytest.approx(0, abs=1e-14)
    assert not flatness_deviation(IntPolynomial([1]), 1, NormQuery(4)).exact


@pytest.mark.parametrize("q", [3, 10, 64])
def test_flatness_dirichlet_l2(q):
    # oracle: ||D_q||_1 by adaptive quadrature between consecutive zeros j/q
    def integrand(x):
        return abs(math.sin(math.pi * q * x) / math.sin(math.pi * x)) if x else q

    l1 = sum(quad(integrand, j / q, (j + 1) / q, epsabs=1e-13)[0] for j in range(q))
    expected = math.sqrt(2 - 2 * l1 / math.sqrt(q))
    fine = flatness_deviation(dirichlet(q), 1, NormQuery(2, 1 / math.sqrt(q), 1 << 18))
    assert fine.value == pytest.approx(expected, rel=1e-7)
    # the doubling delta at the default grid is the right order of magnitude for the true error
    coarse = flatness_deviation(dirichlet(q), 1, NormQuery(2, 1 / math.sqrt(q)))
    assert abs(coarse.value - expected) <= 2 * coarse.alias_error_bound + 1e-12


def test_flatness_rudin_shapiro_stable():
    P = from_signs(rudin_shapiro(10))
    r = flatness_deviation(P, 1, NormQuery(4, 2**-5, 1 << 16))
    assert r.value > 0.1
    assert r.alias_error_bound < 1e-6
    fine = flatness_deviation(P, 1, NormQuery(4, 2**-5, 1 << 20))
    assert r.value == pytest.approx(fine.value, abs=1e-6)


def test_norm_ratio_examples():
    D = dirichlet(20)
    for a in (1.5, 3, 4):
        assert norm_ratio(D, D, a) == pytest.approx(1, abs=1e-14)
    eta, _ = split_littlewood(from_signs_all_plus(16))
    assert norm_ratio(2 * from_bits(eta), dirichlet(16), 4) == pytest.approx(2, abs=1e-14)
    with pytest.raises(ValueError):
        norm_ratio(D, IntPolynomial([0, 0]), 4)


def from_signs_all_plus(q):
    from flatpoly.polycore import SignSequence

    return SignSequence(np.ones(q, dtype=int))


def test_newman_ratio():
    assert newman_ratio(BinarySequence.parse("1")) == 1
    for N in (2, 7, 30):
        closed = N**2 + 2 * sum((N - t) ** 2 for t in range(1, N))
        expected = closed**0.25 / math.sqrt(N)
        assert newman_ratio(BinarySequence(np.ones(N, dtype=int))) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ValueError):
        newman_ratio(BinarySequence.parse("000"))


def test_mz_examples():
    rep = mz_check(dirichlet(4), 2)
    assert rep.sampling.applicable and rep.sampling.satisfied and rep.sampling.slack > 0
    assert rep.sampled_mean == pytest.approx(rep.norm, rel=1e-12)
    mono = mz_check(IntPolynomial([0, 0, 1]), 3.0, 0.7)
    assert mono.sampled_mean == pytest.approx(0.7) and mono.norm == pytest.approx(0.7)
    assert mono.satisfied
    rnd = mz_check(from_signs(random_littlewood(64, 11)), 4, 1 / 8)
    assert rnd.sampling.satisfied and rnd.recovery.satisfied
    assert rnd.A_prime_alpha == pytest.approx(2 * (1 + math.sqrt(2)) + 1)


def test_mz_applicability():
    rep = mz_check(dirichlet(5), 1.0)
    assert rep.sampling.applicable and not rep.recovery.applicable
    rep = mz_check(dirichlet(5), 0.5)
    assert not rep.sampling.applicable and not rep.recovery.applicable


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 80), st.floats(1.25, 8), st.integers(0, 2**32))
def test_mz_property(n, alpha, seed):
    rep = mz_check(from_signs(random_littlewood(n, seed)), alpha, 1 / math.sqrt(n))
    assert rep.satisfied
    assert rep.A_prime == pytest.approx(constants.a_constants().A_prime)
