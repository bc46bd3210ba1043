import numpy as np
import pytest

from hardylab.errors import ConfigError, UnboundedOperator
from hardylab.hardy import Membership, constant, h_lambda, hardy_function
from hardylab.maps import AnalyticMap
from hardylab.semigroup import family_lookup, generator, model_function
from hardylab.spectrum import (Candidate, DWKind, NuGrid, SpectrumReport, boundary_candidates, eigen_residual,
                               exp_eigenfunction, interior_candidates, lattice_consistent, point_spectrum,
                               power_eigenfunction, unbounded_growth)

GRID = np.array([0.3 + 0.5j, -0.7 + 1.2j, 1.1 + 2.0j])
SMALL = NuGrid(-1, 1, 3, -1, 1, 3)


def test_nugrid_parse_roundtrip():
    g = NuGrid.parse("-1:1:3,-2:2:5")
    assert g == NuGrid(-1, 1, 3, -2, 2, 5)
    assert len(g.points()) == 15
    assert NuGrid.parse(g.describe()) == g


@pytest.mark.parametrize("text", ["1:2", "a:b:c,1:2:3", "1:2:3", "2:1:3,0:1:2", "0:1:0,0:1:2"])
def test_nugrid_parse_errors(text):
    with pytest.raises(ConfigError):
        NuGrid.parse(text)


def test_candidate_lattices():
    assert interior_candidates(-1, 3) == [0, -1, -2, -3]
    assert boundary_candidates(0.5j, NuGrid(1, 1, 1, 0, 2, 2)) == [0.5j, 0.5j * (1 + 2j)]


def test_translation_spectrum_empty():
    rep = point_spectrum(family_lookup("translation"), 2, nu_grid=SMALL)
    assert rep.dw_kind is DWKind.BOUNDARY
    assert rep.sigma_pi == []
    assert len(rep.candidates) == 9
    assert all(c.verdict is Membership.NON_MEMBER for c in rep.candidates)
    assert rep.scan_bounds == {"nu_grid": "-1:1:3,-1:1:3"}


def test_sqrt_parabolic_spectrum_empty():
    rep = point_spectrum(family_lookup("sqrt_parabolic"), 2, nu_grid=SMALL)
    assert rep.sigma_pi == []
    assert rep.multiplier == pytest.approx(0.5j)


def test_unbounded_family_rejected():
    with pytest.raises(UnboundedOperator):
        point_spectrum(family_lookup("example2"), 2)


def test_interior_lattice_on_example1():
    rep = point_spectrum(family_lookup("example1"), 2, k_max=5, require_bounded=False)
    assert rep.dw_kind is DWKind.INTERIOR
    assert [c.eigenvalue for c in rep.candidates] == pytest.approx([0, -1, -2, -3, -4, -5])
    # h^0 = 1 is never in H^p; |h| is bounded below near infinity so no power is either
    assert rep.candidates[0].verdict is Membership.NON_MEMBER
    assert rep.sigma_pi == []
    assert lattice_consistent(rep)


def test_interior_eigenfunctions_satisfy_equation():
    fam = family_lookup("example1")
    info = generator(fam)
    model = model_function(fam, info)
    for k in range(4):
        ode, flow = eigen_residual(fam, power_eigenfunction(model.h, k), model.coefficient * k, GRID, info=info)
        assert ode < 1e-6 and flow < 1e-6


def test_exponential_eigenfunctions_translation():
    fam = family_lookup("translation")
    info = generator(fam)
    model = model_function(fam, info)
    for nu in (1, 1j, -1 - 1j):
        ode, flow = eigen_residual(fam, exp_eigenfunction(model.h, nu), model.coefficient * nu, GRID, info=info)
        assert ode < 1e-8 and flow < 1e-8


def test_non_eigenfunction_detected():
    fam = family_lookup("translation")
    ode, _ = eigen_residual(fam, h_lambda(-1), 1.0, np.array([1j]))
    assert abs(ode - abs(0.25 + 0.5j)) < 1e-12


def test_unbounded_growth():
    assert unbounded_growth(hardy_function("exp", lambda z: np.exp(-1j * z)))
    assert unbounded_growth(hardy_function("exp", lambda z: np.exp(z)))
    assert not unbounded_growth(h_lambda(-1))
    # members are bounded on Im z = 1, so polynomial growth there already excludes membership
    assert unbounded_growth(hardy_function("z^3", lambda z: z ** 3))
    assert not unbounded_growth(constant(1.0))


def _report(values, mult):
    cands = [Candidate(v, "x", Membership.MEMBER) for v in values]
    return SpectrumReport(DWKind.INTERIOR, cands, list(values), {}, mult)


def test_lattice_consistency():
    assert lattice_consistent(_report([0, -1, -3], -1))
    assert not lattice_consistent(_report([0, -1.5], -1))
    assert lattice_consistent(_report([], -1))


def test_report_json():
    rep = point_spectrum(family_lookup("translation"), 2, nu_grid=NuGrid(1, 1, 1, 0, 0, 1))
    data = rep.as_json()
    assert data["dw_kind"] == "Boundary"
    assert data["candidates"][0]["eigenvalue"] == [1.0, 0.0]
    assert data["candidates"][0]["verdict"] == "NonMember"


def test_power_eigenfunction_zero_is_constant():
    h = AnalyticMap("h", lambda z: z, deriv=lambda z: np.ones_like(z))
    f = power_eigenfunction(h, 0)
    assert np.all(f(GRID) == 1)
    assert np.all(f.map.deriv(GRID) == 0)
