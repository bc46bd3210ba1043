import math

import numpy as np
import pytest

from hardylab.errors import NotApplicable, ParamError, UnboundedOperator
from hardylab.hardy import constant, e_n, h_lambda, hardy_function, reproducing_kernel, unit_h
from hardylab.maps import catalog_lookup
from hardylab.operators import (Boundedness, DomainVerdict, classify_boundedness, compose_apply, domain_check,
                                empirical_norm_lower_bound, gamma_apply, generator_residual,
                                nonuniform_growth_probe, operator_norm, strong_continuity_probe)
from hardylab.semigroup import family_lookup, generator

T_SEQ = (1.0, 0.1, 0.01, 0.001)


def test_compose_identity(grid):
    f = compose_apply(h_lambda(-1), catalog_lookup("identity"))
    assert np.max(np.abs(f(grid) - h_lambda(-1)(grid))) < 1e-15


def test_compose_values():
    assert abs(compose_apply(h_lambda(-1), catalog_lookup("dilation", {"c": 2}))(1j) - (-1j / 3)) < 1e-15
    k = compose_apply(reproducing_kernel(1j), catalog_lookup("translation", {"b": 1}))
    assert abs(k(1j) - 1j / (2 * math.pi * (1 + 2j))) < 1e-15


def test_compose_chain_rule():
    f = compose_apply(h_lambda(-2), catalog_lookup("example1", {"t": 0.5}))
    z = np.array([0.5 + 1j, -3 + 0.2j])
    assert np.max(np.abs(f.map.deriv(z) - f.derivative(z, method="cauchy"))) < 1e-8


@pytest.mark.parametrize("name,params,p,t,expected", [
    ("dilation", {"c": 1}, 2, 1, math.exp(-0.5)), ("dilation", {"c": 1}, 2, 0, 1.0),
    ("translation", {}, 1, 3, 1.0), ("translation", {}, 4, 0.2, 1.0), ("sqrt_parabolic", {}, 2, 1, 1.0),
    ("dilation", {"c": 2}, 1, 0.5, math.exp(-1)), ("trivial", {}, 2, 5, 1.0),
])
def test_operator_norm(name, params, p, t, expected):
    assert abs(operator_norm(family_lookup(name, params), p, t) - expected) < 1e-12


def test_operator_norm_errors():
    with pytest.raises(ParamError):
        operator_norm(family_lookup("dilation"), 2, -1)
    with pytest.raises(UnboundedOperator):
        operator_norm(family_lookup("example2"), 2, 1)
    with pytest.raises(ParamError):
        classify_boundedness(family_lookup("dilation"), 0)


@pytest.mark.parametrize("name", ["example1", "example2"])
def test_examples_are_unbounded(name):
    v = classify_boundedness(family_lookup(name), 2)
    assert v.verdict is Boundedness.UNBOUNDED
    assert v.phi1_inf_estimate < 1e-2
    with pytest.raises(UnboundedOperator):
        v.norm_at(1, 2)


@pytest.mark.parametrize("name,delta", [("dilation", 1.0), ("translation", 0.0), ("sqrt_parabolic", 0.0)])
def test_bounded_and_consistent(name, delta):
    v = classify_boundedness(family_lookup(name), 2)
    assert v.verdict is Boundedness.BOUNDED
    assert v.consistent
    assert abs(v.delta - delta) < 1e-3


def test_norm_semigroup_law():
    fam = family_lookup("dilation", {"c": 1.3})
    v = classify_boundedness(fam, 2)
    for t, s in [(0.2, 0.7), (1, 2), (0.01, 5)]:
        assert abs(v.norm_at(t + s, 2) - v.norm_at(t, 2) * v.norm_at(s, 2)) < 1e-12


@pytest.mark.parametrize("c,contraction", [(1.0, True), (0.3, True), (-0.5, False)])
def test_contraction_iff_dw_at_infinity(c, contraction):
    fam = family_lookup("dilation", {"c": c})
    info = generator(fam)
    assert info.dw.is_infinity is contraction
    assert (operator_norm(fam, 2, 1.0) <= 1) is contraction


def test_empirical_norm_dilation():
    fam = family_lookup("dilation", {"c": 1})
    tests = [h_lambda(-1), e_n(1, 2), e_n(3, 2), unit_h(), reproducing_kernel(0.5 + 2j)]
    for f in tests:
        assert abs(empirical_norm_lower_bound(fam, 2, 1.0, [f]) - math.exp(-0.5)) < 1e-6


@pytest.mark.parametrize("name", ["translation", "trivial"])
def test_empirical_norm_is_one(name):
    assert abs(empirical_norm_lower_bound(family_lookup(name), 2, 0.7, [h_lambda(-1)]) - 1) < 1e-6


def test_empirical_norm_never_exceeds_formula():
    fam = family_lookup("sqrt_parabolic")
    assert empirical_norm_lower_bound(fam, 2, 1.0, [h_lambda(-1), e_n(2, 2)]) <= 1 + 1e-6


def test_continuity_trivial():
    assert strong_continuity_probe(family_lookup("trivial"), h_lambda(-1), 2, T_SEQ) == [0, 0, 0, 0]


def test_continuity_translation():
    res = strong_continuity_probe(family_lookup("translation"), h_lambda(-1), 2, T_SEQ)
    assert all(b < a for a, b in zip(res, res[1:]))
    assert res[-1] < 0.018
    # ||1/(x+t+i) - 1/(x+i)||^2 = 2 pi - 8 pi / (t^2 + 4)
    exact = math.sqrt(2 * math.pi - 8 * math.pi / 5)
    assert abs(res[0] - exact) < 1e-6


def test_continuity_dilation():
    res = strong_continuity_probe(family_lookup("dilation"), e_n(1, 2), 2, T_SEQ)
    assert all(b < a for a, b in zip(res, res[1:]))
    assert res[-1] < 1e-2


def test_continuity_needs_finite_p():
    with pytest.raises(ParamError):
        strong_continuity_probe(family_lookup("translation"), h_lambda(-1), math.inf, T_SEQ)


def test_gamma_apply_closed_forms(grid):
    tr = generator(family_lookup("translation"))
    g = gamma_apply(tr, h_lambda(-2))
    assert np.max(np.abs(g(grid) + 2 * (grid + 1j) ** -3)) < 1e-12
    dil = generator(family_lookup("dilation"))
    g = gamma_apply(dil, h_lambda(-1))
    assert np.max(np.abs(g(grid) + grid * (grid + 1j) ** -2)) < 1e-12
    triv = generator(family_lookup("trivial"))
    assert np.all(gamma_apply(triv, h_lambda(-1))(grid) == 0)


def test_gamma_apply_numeric_derivative(grid):
    f = hardy_function("no-deriv", lambda z: 1 / (z + 1j) ** 2)
    g = gamma_apply(generator(family_lookup("translation")), f)
    assert np.max(np.abs(g(grid) + 2 * (grid + 1j) ** -3)) < 1e-8


@pytest.mark.parametrize("name,f,expected", [
    ("translation", h_lambda(-2), DomainVerdict.IN_DOMAIN),
    ("dilation", h_lambda(-1), DomainVerdict.IN_DOMAIN),
    ("trivial", unit_h(), DomainVerdict.IN_DOMAIN),
    ("sqrt_parabolic", h_lambda(-2), DomainVerdict.NOT_IN_DOMAIN),
])
def test_domain_check(name, f, expected):
    assert domain_check(generator(family_lookup(name)), f, 2) is expected


def test_generator_residual_trivial():
    fam = family_lookup("trivial")
    assert generator_residual(fam, generator(fam), h_lambda(-1), 2, 0.01) == 0


@pytest.mark.parametrize("name,f", [("translation", h_lambda(-2)), ("dilation", h_lambda(-1)),
                                    ("dilation", e_n(1, 2))])
def test_generator_residual_halves(name, f):
    fam = family_lookup(name)
    info = generator(fam)
    r1 = generator_residual(fam, info, f, 2, 1e-2)
    r2 = generator_residual(fam, info, f, 2, 5e-3)
    assert 0.3 < r2 / r1 < 0.7


def test_generator_residual_needs_positive_t():
    fam = family_lookup("translation")
    with pytest.raises(ParamError):
        generator_residual(fam, generator(fam), h_lambda(-2), 2, 0)


def test_growth_probe_translation():
    fam = family_lookup("translation")
    probe = nonuniform_growth_probe(fam, generator(fam), 2, 10)
    assert all(b > a for a, b in zip(probe.lower_bounds, probe.lower_bounds[1:]))
    assert probe.lower_bounds[-1] / probe.lower_bounds[0] > 5
    assert all(low >= fl - 1e-6 for low, fl in zip(probe.lower_bounds, probe.floors))


def test_growth_probe_dilation():
    fam = family_lookup("dilation")
    probe = nonuniform_growth_probe(fam, generator(fam), 2, 10)
    assert all(low >= fl - 1e-6 for low, fl in zip(probe.lower_bounds, probe.floors))


def test_growth_probe_trivial_is_zero():
    fam = family_lookup("trivial")
    probe = nonuniform_growth_probe(fam, generator(fam), 2, 3)
    assert probe.lower_bounds == (0, 0, 0)


def test_growth_probe_needs_member():
    fam = family_lookup("sqrt_parabolic")
    with pytest.raises(NotApplicable):
        nonuniform_growth_probe(fam, generator(fam), 2, 3)


def test_growth_probe_needs_finite_p():
    fam = family_lookup("translation")
    with pytest.raises(ParamError):
        nonuniform_growth_probe(fam, generator(fam), 0.5, 3)


def test_constant_composition_stays_constant(grid):
    f = compose_apply(constant(2.0), catalog_lookup("dilation", {"c": 3}))
    assert np.all(f(grid) == 2)


def test_sqrt_parabolic_continuity_matches_boundary_oracle():
    # independent check on boundary values: phi_t(x) = i sqrt(t - x^2) with branch points at +-sqrt(t)
    integrate = pytest.importorskip("scipy.integrate")
    t = 1e-3
    f = e_n(1, 2)

    def integrand(x):
        z = x + 1e-14j
        return abs(f(complex(1j * np.sqrt(t - z * z))) - f(complex(z))) ** 2

    r = math.sqrt(t)
    pieces = [(-math.inf, -r), (-r, 0), (0, r), (r, math.inf)]
    oracle = math.sqrt(sum(integrate.quad(integrand, a, b, limit=400, epsabs=1e-13)[0] for a, b in pieces))
    (probe,) = strong_continuity_probe(family_lookup("sqrt_parabolic"), f, 2, [t])
    assert abs(probe - oracle) < 1e-5
    assert probe > 1e-2
