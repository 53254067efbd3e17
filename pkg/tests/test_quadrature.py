import math

import numpy as np
import pytest

from moving_well import QuadratureBudgetError
from moving_well.quadrature import integrate


def test_polynomial_is_exact_in_one_panel():
    result = integrate(lambda x: 3 * x**2 - x + 2, 0.0, 2.0, tol=1e-14)
    assert result.value == pytest.approx(8.0 - 2.0 + 4.0, abs=1e-13)
    assert result.panels <= 3


def test_oscillatory_sine():
    # int_0^1 sin(128 pi x)^2 dx = 1/2
    result = integrate(lambda x: np.sin(128 * np.pi * x) ** 2, 0.0, 1.0, tol=1e-12)
    assert result.value == pytest.approx(0.5, abs=1e-11)


def test_complex_integrand():
    result = integrate(lambda x: np.exp(1j * x), 0.0, math.pi, tol=1e-13)
    assert result.value == pytest.approx(0.0 + 2.0j, abs=1e-12)


def test_reversed_interval_flips_sign():
    forward = integrate(lambda x: x**3, 0.0, 1.0, tol=1e-13).value
    backward = integrate(lambda x: x**3, 1.0, 0.0, tol=1e-13).value
    assert backward == pytest.approx(-forward, abs=1e-14)


def test_empty_interval():
    assert integrate(lambda x: x, 1.0, 1.0).value == 0.0


def test_budget_exhaustion_carries_estimate():
    # highly oscillatory with a tiny budget: must fail loudly, not silently
    with pytest.raises(QuadratureBudgetError) as info:
        integrate(lambda x: np.sin(5000 * x), 0.0, 1.0, tol=1e-14, budget=8)
    err = info.value
    assert err.panels >= 8
    assert math.isfinite(abs(err.estimate))
    assert err.error > 0


def test_tolerance_scaling():
    # |integral of exp(-x^2) over [0,5]| known via erf: sqrt(pi)/2 * erf(5)
    target = math.sqrt(math.pi) / 2 * math.erf(5.0)
    for tol in (1e-8, 1e-12):
        result = integrate(lambda x: np.exp(-(x**2)), 0.0, 5.0, tol=tol)
        assert abs(result.value - target) <= 10 * tol
