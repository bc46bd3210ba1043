import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hardylab.errors import ConvergenceError, DomainError, ParamError, UnknownCatalogEntry
from hardylab.maps import (AnalyticMap, CATALOG, Domain, catalog_lookup, cauchy_derivative,
                           cauchy_riemann_residual, check_self_map, derivative, eval_map)
from hardylab._util import rng, sample_halfplane

SELF_MAPS = [("identity", {}), ("dilation", {"c": 2.0}), ("translation", {"b": 1 + 0.5j}),
             ("mobius", {"a": 2.0, "b": 1.0, "c": 1.0, "d": 3.0}), ("example1", {"t": 1.0}),
             ("example2", {"t": 0.7}), ("sqrt_parabolic", {"t": 1.0})]


def test_identity_eval():
    assert eval_map(catalog_lookup("identity"), 2 + 3j) == 2 + 3j


def test_example1_fixes_i():
    assert abs(catalog_lookup("example1", {"t": 1.0})(1j) - 1j) < 1e-15


def test_example2_at_time_zero_is_identity():
    assert catalog_lookup("example2", {"t": 0.0})(5j) == 5j


def test_eval_rejects_points_outside_domain():
    with pytest.raises(DomainError):
        eval_map(catalog_lookup("identity"), 1.0)
    disc = AnalyticMap("w", lambda w: w, Domain.DISC)
    with pytest.raises(DomainError):
        disc(1.0)


def test_polynomial_derivative_by_cauchy_integral():
    sq = AnalyticMap("square", lambda z: z * z)
    assert abs(derivative(sq, 1 + 1j) - (2 + 2j)) < 1e-10


def test_dilation_derivative():
    assert derivative(catalog_lookup("dilation", {"c": 2}), 3 + 4j) == 2


def test_example2_derivative_matches_cauchy():
    m = catalog_lookup("example2", {"t": 1.0})
    closed = derivative(m, 1j)
    assert abs(closed - math.exp(-1) * (1j + 1) ** (math.exp(-1) - 1)) < 1e-14
    assert abs(derivative(m, 1j, method="cauchy") - closed) < 1e-8


def test_example1_angular_value_at_infinity():
    phi = catalog_lookup("example1", {"t": 1.0})
    expected = 1j * (1 + math.exp(-1)) / (1 - math.exp(-1))
    assert abs(phi(1e8j) - expected) < 1e-6
    assert abs(expected - 2.16395j) < 1e-5


def test_translation_by_zero_is_identity(grid):
    assert np.array_equal(catalog_lookup("translation", {"b": 0})(grid), grid)


def test_sqrt_parabolic_branch():
    assert abs(catalog_lookup("sqrt_parabolic", {"t": 1})(1j) - 1j * math.sqrt(2)) < 1e-15


@pytest.mark.parametrize("name,params", SELF_MAPS)
def test_catalog_self_maps(name, params):
    assert check_self_map(catalog_lookup(name, params), 1000)


@pytest.mark.parametrize("name,params", SELF_MAPS)
def test_catalog_holomorphic_and_derivatives(name, params):
    m = catalog_lookup(name, params)
    z = sample_halfplane(50, rng(3))
    assert cauchy_riemann_residual(m, z) < 1e-8
    closed = m.deriv(z)
    numeric = cauchy_derivative(m.func, z)
    assert np.max(np.abs(closed - numeric) / np.maximum(1, np.abs(closed))) < 1e-8


def test_example2_imaginary_part_closed_form(grid):
    t = 0.8
    q = math.exp(-t)
    vals = catalog_lookup("example2", {"t": t})(grid)
    expected = np.abs(grid + 1) ** q * np.sin(q * np.angle(grid + 1))
    assert np.max(np.abs(vals.imag - expected)) < 1e-10


def test_unknown_entry():
    with pytest.raises(UnknownCatalogEntry):
        catalog_lookup("rotation")
    assert set(CATALOG) >= {"identity", "dilation", "translation", "mobius", "example1", "example2",
                            "sqrt_parabolic"}


@pytest.mark.parametrize("name,params", [("dilation", {"c": 0}), ("dilation", {"c": -1}),
                                         ("translation", {"b": -1j}), ("mobius", {"a": 1, "b": 2, "c": 3, "d": 4}),
                                         ("example1", {"t": -1}), ("dilation", {"k": 1})])
def test_bad_parameters(name, params):
    with pytest.raises(ParamError):
        catalog_lookup(name, params)


def test_cauchy_derivative_detects_nonconvergence():
    # essential singularity just below the circle of integration
    with pytest.raises(ConvergenceError):
        cauchy_derivative(lambda z: np.exp(1 / (z + 0.2j) ** 3), np.asarray(0.3j), n=8)


def test_scalar_in_scalar_out():
    v = catalog_lookup("dilation", {"c": 2})(1j)
    assert isinstance(v, complex)


@settings(max_examples=50, deadline=None)
@given(st.floats(-50, 50), st.floats(1e-3, 50), st.floats(0.01, 5))
def test_example1_semigroup_in_time(x, y, s):
    z = complex(x, y)
    a = catalog_lookup("example1", {"t": s})(catalog_lookup("example1", {"t": 0.5})(z))
    b = catalog_lookup("example1", {"t": s + 0.5})(z)
    assert abs(a - b) <= 1e-9 * max(1, abs(b))
