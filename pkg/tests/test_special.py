import math

import numpy as np
import pytest

from slpkit.special import (BowmanParams, SpecialFunctionError, bessel_j,
                            bessel_j_zeros, bessel_ode_residual, bessel_y,
                            bessel_y_zeros, gamma_fn)


def test_gamma_classical_values():
    assert gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-12)
    assert gamma_fn(5.0) == pytest.approx(24.0, rel=1e-12)
    assert gamma_fn(1.0) == pytest.approx(1.0, rel=1e-14)
    # recurrence across the reflection split
    for x in (0.1, 0.3, 1.7, 10.5, 29.5):
        assert gamma_fn(x + 1.0) == pytest.approx(x * gamma_fn(x), rel=1e-12)


def test_gamma_poles():
    for x in (0.0, -1.0, -3.0):
        with pytest.raises(SpecialFunctionError):
            gamma_fn(x)


def test_bessel_j_half_order_values():
    # J_{1/2}(x) = sqrt(2/(pi x)) sin(x)
    assert bessel_j(0.5, math.pi / 2) == pytest.approx(2.0 / math.pi, abs=1e-12)
    # J_{3/2}(x) = sqrt(2/(pi x)) (sin(x)/x - cos(x))
    closed = math.sqrt(2.0 / math.pi) * (math.sin(1.0) - math.cos(1.0))
    assert bessel_j(1.5, 1.0) == pytest.approx(closed, abs=1e-12)
    assert bessel_j(1.5, 1.0) == pytest.approx(0.2402978392, abs=1e-9)


def test_bessel_j_small_argument_limit():
    assert abs(bessel_j(0.0, 1e-8) - 1.0) < 1e-12


def test_bessel_j_requires_positive_argument():
    with pytest.raises(SpecialFunctionError):
        bessel_j(1.0, 0.0)


def test_bessel_y_half_order_values():
    # Y_{1/2}(x) = -sqrt(2/(pi x)) cos(x)
    assert bessel_y(0.5, math.pi) == pytest.approx(math.sqrt(2.0) / math.pi, abs=1e-12)
    assert abs(bessel_y(0.5, math.pi / 2)) < 1e-10
    assert bessel_y(1.0, 1.0) == pytest.approx(-0.7812128213, abs=1e-9)


def test_half_order_closed_forms_on_grid():
    for x in np.linspace(0.1, 20.0, 180):
        x = float(x)
        amp = math.sqrt(2.0 / (math.pi * x))
        assert abs(bessel_j(0.5, x) - amp * math.sin(x)) <= 1e-10
        assert abs(bessel_j(1.5, x) - amp * (math.sin(x) / x - math.cos(x))) <= 1e-10
        assert abs(bessel_y(0.5, x) + amp * math.cos(x)) <= 1e-10
        assert abs(bessel_y(1.5, x) + amp * (math.cos(x) / x + math.sin(x))) <= 1e-10


def test_wronskian_and_recurrence_random_sample():
    rng = np.random.default_rng(42)
    for _ in range(200):
        nu = float(rng.uniform(0.0, 4.0))
        x = float(rng.uniform(0.5, 40.0))
        wron = (bessel_j(nu + 1.0, x) * bessel_y(nu, x)
                - bessel_j(nu, x) * bessel_y(nu + 1.0, x))
        assert abs(wron - 2.0 / (math.pi * x)) <= 1e-9, (nu, x)
        rec = (bessel_j(nu - 1.0, x) + bessel_j(nu + 1.0, x)
               - (2.0 * nu / x) * bessel_j(nu, x))
        assert abs(rec) <= 1e-9, (nu, x)


@pytest.mark.parametrize("k", [0.75, 2.0])
@pytest.mark.parametrize("kind", ["J", "Y"])
def test_scaled_bessel_satisfies_reduced_ode(k, kind):
    # w(tau) = sqrt(tau) * Z_nu(tau) solves tau^2 w'' + (tau^2 - k) w = 0
    nu = 0.5 * math.sqrt(4.0 * k + 1.0)
    fn = bessel_j if kind == "J" else bessel_y

    def w(tau):
        return math.sqrt(tau) * fn(nu, tau)

    h = 0.01
    for tau in np.linspace(1.0, 10.0, 41):
        tau = float(tau)
        d2 = (-w(tau - 2 * h) + 16 * w(tau - h) - 30 * w(tau)
              + 16 * w(tau + h) - w(tau + 2 * h)) / (12 * h * h)
        residual = tau * tau * d2 + (tau * tau - k) * w(tau)
        assert abs(residual) <= 1e-6, (k, kind, tau, residual)


def test_bowman_params_derive_order():
    params = BowmanParams(p_bar=-0.5, alpha_bar=1.0, beta_bar_sq=-0.75, r_bar=1.0)
    assert params.q_bar == pytest.approx(1.0)
    with pytest.raises(SpecialFunctionError):
        BowmanParams(p_bar=0.5, alpha_bar=1.0, beta_bar_sq=4.0, r_bar=1.0)


def test_bessel_ode_residual_certifies_solution():
    params = BowmanParams(p_bar=-0.5, alpha_bar=1.0, beta_bar_sq=-0.75, r_bar=1.0)
    assert abs(bessel_ode_residual(params, 1.0, 0.0, 2.0)) <= 1e-6
    assert abs(bessel_ode_residual(params, 0.3, 0.7, 2.0)) <= 1e-6
    assert bessel_ode_residual(params, 0.0, 0.0, 2.0) == 0.0


def test_bessel_ode_residual_rejects_wrong_order():
    params = BowmanParams(p_bar=-0.5, alpha_bar=1.0, beta_bar_sq=-0.75, r_bar=1.0)

    def wrong(z):  # order q_bar/r_bar + 1 instead of q_bar/r_bar
        return z**0.5 * bessel_j(2.0, z)

    assert abs(bessel_ode_residual(params, 1.0, 0.0, 2.0, candidate=wrong)) > 1e-2


def test_zero_finding_matches_literature():
    zeros = bessel_j_zeros(1.0, 0.5, 14.0)
    # j_{1,1..4} = 3.8317059702, 7.0155866698, 10.1734681351, 13.3236919363
    assert len(zeros) == 4
    assert zeros[0] == pytest.approx(3.8317059702, abs=1e-8)
    assert zeros[3] == pytest.approx(13.3236919363, abs=1e-8)
    yzeros = bessel_y_zeros(1.0, 0.5, 12.0)
    # y_{1,1..3} = 2.1971413260, 5.4296810407, 8.5960058683
    assert yzeros[0] == pytest.approx(2.1971413260, abs=1e-8)
    assert yzeros[2] == pytest.approx(8.5960058683, abs=1e-8)
