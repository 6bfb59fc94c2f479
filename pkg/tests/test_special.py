import math

import pytest
from hypothesis import given, strategies as st
from scipy import integrate, special

from binomcheb.special import gamma_pair, gamma_upper, gamma_upper_asymptotic


def quad_gamma(s, a, b):
    val, _ = integrate.quad(lambda t: t ** (s - 1) * math.exp(-t), a, b,
                            epsabs=0, epsrel=1e-13, limit=200)
    return val


@pytest.mark.parametrize("x", [0.1, 1.0, 10.0, 30.0])
def test_exponential_case(x):
    assert gamma_upper(1.0, x) == pytest.approx(math.exp(-x), rel=1e-12)


def test_complete_values():
    assert gamma_upper(0.5, 0.0) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma_upper(4.0, 0.0) == pytest.approx(6.0)
    assert gamma_upper(0.5, math.inf) == 0.0


def test_asymptotic_series_large_x():
    exact = gamma_upper(0.5, 25.0)
    assert gamma_upper_asymptotic(0.5, 25.0, terms=4) == pytest.approx(exact, rel=1e-4)


def test_asymptotic_series_terminates_for_integer_order():
    # Gamma(3, x) = e^{-x} (x^2 + 2x + 2) exactly
    x = 4.0
    assert gamma_upper_asymptotic(3.0, x, terms=6) == pytest.approx(gamma_upper(3.0, x), rel=1e-13)


@pytest.mark.parametrize("s,x1,x2", [(0.5, 0.1, 2.0), (0.75, 0.0, 0.3), (0.25, 1.0, 8.0),
                                     (2.5, 3.0, 40.0), (1.0, 0.0, 5.0)])
def test_difference_matches_quadrature(s, x1, x2):
    diff = gamma_upper(s, x1) - gamma_upper(s, x2)
    assert diff == pytest.approx(quad_gamma(s, x1, x2), rel=1e-10)


@given(st.floats(0.05, 8.0), st.floats(0.0, 60.0))
def test_against_scipy_regularised(s, x):
    ref = special.gamma(s) * special.gammaincc(s, x)
    if ref > 1e-300:
        assert gamma_upper(s, x) == pytest.approx(ref, rel=1e-12)


@given(st.floats(0.05, 5.0), st.floats(0.0, 20.0), st.floats(0.01, 5.0))
def test_strictly_decreasing(s, x, dx):
    assert gamma_upper(s, x + dx) < gamma_upper(s, x)


def test_negative_order_by_recurrence():
    # against direct quadrature of the defining integral
    assert gamma_upper(-0.5, 2.0) == pytest.approx(quad_gamma(-0.5, 2.0, math.inf), rel=1e-12)


@pytest.mark.parametrize("s,x", [(0.0, 0.0), (-2.0, 0.0), (0.5, -1.0)])
def test_rejects(s, x):
    with pytest.raises(ValueError):
        gamma_upper(s, x)


def test_pair():
    pair = gamma_pair(0.5, 0.0)
    assert pair.upper == pair.complete
    with pytest.raises(ValueError):
        gamma_pair(-1.0, 1.0)
