import math

import mpmath
import numpy as np
import pytest

from flatpoly.constants import (
    a_constants,
    c2_maximizer,
    constants_report,
    delta_p,
    even_concentration_bounds,
    pichorides,
    predicted_ratio_exponent,
    remainder_regime,
    ConstantsReport,
)


def series_oracle(p, dps=20):
    """(2/pi) * sum over periods of the panel integrals, accelerated by mpmath.nsum."""
    mpmath.mp.dps = dps
    p = mpmath.mpf(p)

    def panel(k):
        f = lambda x: (mpmath.sin(x) ** 2) ** (p / 2) / x**p if x else mpmath.mpf(1)
        return mpmath.quad(f, [k * mpmath.pi, (k + 0.5) * mpmath.pi, (k + 1) * mpmath.pi])

    return float(2 / mpmath.pi * mpmath.nsum(panel, [0, mpmath.inf]))


def test_delta_closed_forms():
    assert delta_p(2) == pytest.approx(1, abs=1e-10)
    assert delta_p(4) == pytest.approx(2 / 3, abs=1e-10)
    # (2/pi) * int (sin x / x)^6 = 11/20, ^8 = 151/315
    assert delta_p(6) == pytest.approx(11 / 20, abs=1e-10)
    assert delta_p(8) == pytest.approx(151 / 315, abs=1e-10)


def test_delta_three_against_series_oracle():
    assert delta_p(3) == pytest.approx(series_oracle(3), abs=1e-8)


def test_delta_decreasing():
    ps = np.linspace(2, 8, 25)
    vals = [delta_p(float(p)) for p in ps]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_delta_rejects():
    with pytest.raises(ValueError):
        delta_p(1.0)
    with pytest.raises(ValueError):
        delta_p(0.3)


@pytest.mark.parametrize("p, tag", [(4, "N^{p-3}"), (3, "ln N"), (2, "constant"), (1, "constant")])
def test_remainder_regime(p, tag):
    assert remainder_regime(p) == tag


def test_predicted_exponents():
    assert predicted_ratio_exponent(4) == -2
    assert predicted_ratio_exponent(2.5) == pytest.approx(-1.5)


def test_pichorides():
    assert pichorides(2) == pytest.approx(1, abs=1e-15)
    assert pichorides(4) == pytest.approx(1 + math.sqrt(2), abs=1e-12)
    assert pichorides(1.5) == pytest.approx(math.sqrt(3), abs=1e-12)
    assert pichorides(2 - 1e-9) == pytest.approx(pichorides(2 + 1e-9), abs=1e-8)
    with pytest.raises(ValueError):
        pichorides(1)


def test_a_constants():
    a = a_constants()
    # oracle: dense scan of (pi a + 1)^(1/a) toward a -> 1+
    alphas = np.concatenate([1 + 10.0 ** -np.arange(3, 13), np.linspace(1.001, 64, 100000)])
    scan = np.max((math.pi * alphas + 1) ** (1 / alphas))
    assert a.A == pytest.approx(math.pi + 1, abs=1e-9)
    assert scan == pytest.approx(a.A, abs=1e-9)
    assert a.A_prime == pytest.approx(2 * (math.pi + 1) + 1, abs=1e-9)
    assert not a.attained
    assert math.sqrt(2 * math.pi + 1) < (1.01 * math.pi + 1) ** (1 / 1.01)


def test_c2_maximizer():
    x, value = c2_maximizer()
    assert abs(math.tan(x) - 2 * x) < 1e-8
    grid = np.linspace(1e-9, math.pi, 10**7)
    scan = np.max(np.sin(grid) ** 2 / grid)
    assert value * math.pi == pytest.approx(scan, abs=1e-10)
    assert value == pytest.approx(math.sin(x) ** 2 / (math.pi * x))


@pytest.mark.parametrize("two_k, bounds", [(4, (0.495, 0.5)), (6, (0.483, 0.5)), (10, (0.483, 0.5))])
def test_even_bounds(two_k, bounds):
    assert even_concentration_bounds(two_k) == bounds


@pytest.mark.parametrize("bad", [2, 3, 5, 7.5])
def test_even_bounds_reject(bad):
    with pytest.raises(ValueError):
        even_concentration_bounds(bad)


def test_report_round_trip():
    r = constants_report(p=3, alpha=1.5, two_k=6)
    assert r.delta_p > 0 and r.even_lower < r.even_upper
    assert all(math.isfinite(v) and v > 0 for v in (r.A, r.A_prime, r.A_prime_alpha, r.c2_value))
    assert ConstantsReport.from_dict(r.to_dict()) == r
