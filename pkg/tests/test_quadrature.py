import math

import numpy as np
import pytest

from hardylab.errors import DivergentIntegral
from hardylab.quadrature import integrate_line, integrate_panels


def test_panels_polynomial_exact():
    assert abs(integrate_panels(lambda x: x ** 3 - x, [0.0, 2.0]) - 2.0) < 1e-14


def test_line_rational():
    res = integrate_line(lambda x: 1 / (x * x + 4))
    assert abs(res.value - math.pi / 2) < 1e-12
    assert res.alpha == pytest.approx(2, abs=1e-3)


def test_line_slow_power_tail():
    # |x + i a|^{-1.2}, integral 2 a^{-0.2} * sqrt(pi) Gamma(0.1) / Gamma(0.6) / 2
    a = 1.0001
    exact = math.sqrt(math.pi) * math.gamma(0.1) / math.gamma(0.6) * a ** -0.2
    res = integrate_line(lambda x: np.abs(x + 1j * a) ** -1.2)
    assert abs(res.value - exact) / exact < 1e-6


@pytest.mark.parametrize("fun", [lambda x: np.ones_like(x), lambda x: np.exp(x), lambda x: 1 / np.sqrt(1 + x * x)])
def test_divergent(fun):
    with pytest.raises(DivergentIntegral):
        integrate_line(fun)


def test_cancellation_noise_in_far_shells():
    # difference of nearly equal values: outer shells only need accuracy relative to the total
    res = integrate_line(lambda x: np.abs(1 / (x + 1j) - 1 / (x + 1.001j)) ** 2)
    exact = math.pi * (1 + 1 / 1.001) - 4 * math.pi / 2.001
    assert abs(res.value - exact) / exact < 1e-5
