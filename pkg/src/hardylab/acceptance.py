"""Acceptance suite: seventeen numbered checks with their stated tolerances.

Each check returns a :class:`CriterionResult` holding the measured quantity
(worst case over the check's cases) next to the tolerance it is held to.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._util import rng, sample_halfplane
from .cayley import Sector, SectorKind, _to_disc, _to_halfplane, conjugate_map, sector_contains
from .errors import HardyLabError
from .hardy import (Membership, constant, e_n, growth_bound_ratio, h_lambda, hardy_function,
                    hardy_norm, membership, reproducing_kernel, unit_h)
from .operators import (Boundedness, classify_boundedness, empirical_norm_lower_bound,
                        generator_residual, nonuniform_growth_probe, operator_norm,
                        strong_continuity_probe)
from .semigroup import (FAMILIES, SemigroupFamily, angular_derivative_at_infinity,
                        angular_derivative_at_one, angular_derivative_profile,
                        conjugate_generator_residual, delta_limit, family_lookup, generator,
                        model_function, sign_condition, verify_semigroup_law)
from .spectrum import DWKind, eigen_residual, point_spectrum


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""
    seconds: float = 0.0
    cases: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.number:2d} {self.name}: measured={self.measured:.6g} "
                f"tol={self.tolerance:.3g}{' (' + self.detail + ')' if self.detail else ''}")

    def as_json(self) -> dict:
        return {"number": self.number, "name": self.name, "passed": self.passed,
                "measured": self.measured, "tolerance": self.tolerance, "detail": self.detail,
                "seconds": self.seconds, "cases": self.cases}


def _result(number, name, cases: dict, tolerance: float, ok: bool | None = None, detail="",
            measured: float | None = None):
    """Worst case over ``cases`` (values compared with ``<= tolerance`` unless ``ok`` given)."""
    if measured is None:
        measured = max(cases.values()) if cases else math.nan
    passed = all(v <= tolerance for v in cases.values()) if ok is None else ok
    return CriterionResult(number, name, bool(passed), float(measured), tolerance, detail,
                           cases={k: float(v) for k, v in cases.items()})


def _rel(a, b):
    return abs(a - b) / abs(b)


def c01_h_lambda_norm() -> CriterionResult:
    cases = {}
    for p in (1.0, 2.0, 4.0):
        est = hardy_norm(h_lambda(-2.0 / p), p)
        cases[f"p={p:g}"] = _rel(est.value ** p, math.pi)
    return _result(1, "||h_{-2/p}||_p^p = pi", cases, 1e-4)


def c02_unit_norms() -> CriterionResult:
    cases = {}
    for z in (1j, 2j, 1 + 1j):
        cases[f"k_{z}"] = _rel(hardy_norm(reproducing_kernel(z), 2).value ** 2, 1 / (4 * math.pi * z.imag))
    cases["unit_h"] = abs(hardy_norm(unit_h(), 2).value - 1)
    ok = all(v <= 1e-6 for v in cases.values())
    for n in (0, 1, 2, 5):
        cases[f"e_{n}"] = abs(hardy_norm(e_n(n, 2), 2).value - 1)
        ok = ok and cases[f"e_{n}"] <= 1e-4
    return _result(2, "kernel, unit_h and e_n norms", cases, 1e-6, ok, "e_n held to 1e-4")


MEMBERSHIP_GRID = [(p, d, eta) for p in (1.0, 1.5, 2.0, 4.0)
                   for d, eta in ((-0.4, 0.0), (-0.1, 2.0), (-0.02, 0.0), (0.1, 0.0), (0.4, -1.0))]


def c03_membership_grid() -> CriterionResult:
    wrong = {}
    for p, d, eta in MEMBERSHIP_GRID:
        lam = complex(-1.0 / p + d, eta)
        expected = Membership.MEMBER if lam.real < -1.0 / p else Membership.NON_MEMBER
        got = membership(h_lambda(lam), p)
        wrong[f"p={p:g},lambda={lam}"] = float(got is not expected)
    return _result(3, "membership of (z+i)^lambda on 20 cases", wrong, 0.0,
                   detail=f"{int(sum(wrong.values()))} misclassified")


def c04_growth_bound() -> CriterionResult:
    g = rng(4)
    pool = [(h_lambda(-1), 2), (unit_h(), 2), (e_n(1, 2), 2), (e_n(3, 2), 2), (reproducing_kernel(1 + 1j), 2),
            (h_lambda(-1.5), 1), (h_lambda(-2), 1), (e_n(2, 4), 4)]
    norms = [hardy_norm(f, p) for f, p in pool]
    zs = sample_halfplane(50, g, x_range=(-5, 5), y_range=(0.05, 5))
    picks = g.integers(0, len(pool), size=50)
    worst = max(growth_bound_ratio(pool[k][0], pool[k][1], z, norms[k]) for k, z in zip(picks, zs))
    eq = max(abs(growth_bound_ratio(h_lambda(-2 / p), p, 1j) - 1) for p in (1.0, 2.0, 4.0))
    cases = {"max_ratio_minus_1": worst - 1, "equality_at_i": eq}
    return _result(4, "growth bound ratio", cases, 1e-6)


def c05_semigroup_law() -> CriterionResult:
    grid = sample_halfplane(100, rng(5))
    times = [(t, s) for t in (0.1, 0.5, 1.0) for s in (0.1, 0.5, 1.0)]
    cases = {name: verify_semigroup_law(family_lookup(name), grid, times) for name in FAMILIES}
    corrupted = SemigroupFamily("corrupted", lambda t, z: z + t ** 2)
    bad = verify_semigroup_law(corrupted, np.array([1j]), [(0.5, 0.5)])
    worst = max(cases.values())
    ok = worst < 1e-9 and bad > 0.1
    cases["corrupted(detected if >0.1)"] = bad
    return _result(5, "semigroup law", cases, 1e-9, ok, f"corrupted residual {bad:.3g}", worst)


def c06_generators() -> CriterionResult:
    cases = {}
    for name in ("dilation", "translation", "sqrt_parabolic", "example1"):
        cases[f"closed_form[{name}]"] = generator(family_lookup(name), resolve_dw=False).closed_form_deviation
    for name in ("dilation", "translation", "sqrt_parabolic", "example1", "example2", "trivial"):
        cases[f"conjugate[{name}]"] = conjugate_generator_residual(family_lookup(name))
    return _result(6, "generators and conjugate identity", cases, 1e-6)


def c07_delta() -> CriterionResult:
    cases = {}
    for name, target in (("dilation", 1.0), ("translation", 0.0), ("sqrt_parabolic", 0.0)):
        info = generator(family_lookup(name), resolve_dw=False)
        delta = delta_limit(info)
        cases[f"delta[{name}]"] = abs(delta - target)
        cases[f"G'_vs_G/z[{name}]"] = abs(info.delta_derivative - delta)
    return _result(7, "delta limits", cases, 1e-3)


def c08_norm_formula() -> CriterionResult:
    fam = family_lookup("dilation", {"c": 1.0})
    verdict = classify_boundedness(fam, 2)
    norm = operator_norm(fam, 2, 1.0, verdict)
    cases = {"norm": abs(norm - 0.606531)}
    ok = cases["norm"] <= 1e-4
    tests = [h_lambda(-1), unit_h(), e_n(1, 2), e_n(2, 2), reproducing_kernel(1 + 1j)]
    for f in tests:
        ratio = empirical_norm_lower_bound(fam, 2, 1.0, [f], verdict)
        cases[f"ratio[{f.label}]"] = _rel(ratio, norm)
        ok = ok and cases[f"ratio[{f.label}]"] <= 1e-3
    mult = max(_rel(operator_norm(fam, 2, t + s, verdict),
                    operator_norm(fam, 2, t, verdict) * operator_norm(fam, 2, s, verdict))
               for t in (0.25, 0.5, 1.0) for s in (0.5, 1.5))
    cases["multiplicativity"] = mult
    ok = ok and mult <= 1e-9
    return _result(8, "norm formula", cases, 1e-4, ok, "ratios 1e-3, multiplicativity 1e-9")


def c09_unbounded_examples() -> CriterionResult:
    cases = {}
    ok = True
    for name in ("example1", "example2"):
        fam = family_lookup(name)
        prof = angular_derivative_profile(fam.at(1.0))
        est = abs(prof.vertical[-1])
        verdict = classify_boundedness(fam, 2)
        cases[name] = est
        ok = ok and est < 1e-2 and verdict.verdict is Boundedness.UNBOUNDED
    return _result(9, "examples 1 and 2 unbounded", cases, 1e-2, ok)


def c10_power_law_duality() -> CriterionResult:
    fam = family_lookup("dilation", {"c": 1.0})
    base = angular_derivative_at_infinity(fam.at(1.0))
    cases = {f"power[t={t:g}]": _rel(angular_derivative_at_infinity(fam.at(t)), base ** t) for t in (0.5, 2.0)}
    for name in ("dilation", "translation", "sqrt_parabolic"):
        phi = family_lookup(name).at(1.0)
        cases[f"duality[{name}]"] = abs(angular_derivative_at_one(conjugate_map(phi))
                                        * angular_derivative_at_infinity(phi) - 1)
    return _result(10, "power law and Cayley duality", cases, 1e-3)


def _disc_sector_points(a, n, g):
    pts = []
    while len(pts) < n:
        r = 10 ** g.uniform(-8, 0, 4 * n)
        th = g.uniform(-math.pi / 2, math.pi / 2, 4 * n)
        w = 1 - r * np.exp(1j * th)
        w = w[(np.abs(w) < 1) & (np.abs(w - 1) < a * (1 - np.abs(w)))]
        pts.extend(w.tolist())
    return np.array(pts[:n])


def c11_sector_mapping() -> CriterionResult:
    g = rng(11)
    cases = {}
    for a in (2.0, 5.0, 10.0):
        w = _disc_sector_points(a, 1000, g)
        inside = sector_contains(Sector(SectorKind.HALF_PLANE_AT_INFINITY, a), _to_halfplane(w))
        cases[f"S_{a:g}->T_{a:g}"] = float(np.sum(~inside))
    for u in (1.0, 3.0):
        y = 10 ** g.uniform(0, 6, 1000)
        z = u * y * g.uniform(-1, 1, 1000) + 1j * y
        z = z[(np.abs(z.real) < u * z.imag) & (z.imag > 1)]
        inside = sector_contains(Sector(SectorKind.DISC_AT_ONE, 4 * (u + 1)), _to_disc(z))
        cases[f"T_{u:g}->S_{4 * (u + 1):g}"] = float(np.sum(~inside))
    return _result(11, "sector mapping violations", cases, 0.0)


def c12_strong_continuity() -> CriterionResult:
    ts = (1.0, 0.1, 0.01, 0.001)
    cases = {}
    ok = True
    failing = []
    for name in ("translation", "dilation", "sqrt_parabolic"):
        fam = family_lookup(name)
        for f in (h_lambda(-1), e_n(1, 2)):
            res = strong_continuity_probe(fam, f, 2, ts)
            fnorm = hardy_norm(f, 2).value
            decreasing = all(b < a for a, b in zip(res, res[1:]))
            ratio = res[-1] / fnorm
            cases[f"{name}:{f.label}"] = ratio
            if not (decreasing and ratio < 1e-2):
                ok = False
                failing.append(f"{name}:{f.label}")
    return _result(12, "strong continuity ||T_t f - f|| / ||f|| at t=1e-3", cases, 1e-2, ok,
                   "failing: " + ", ".join(failing) if failing else "")


GENERATOR_FIXTURES = (("translation", -2.0), ("dilation", -1.0))


def c13_generator_identity() -> CriterionResult:
    cases = {}
    ok = True
    for name, lam in GENERATOR_FIXTURES:
        fam = family_lookup(name)
        info = generator(fam, resolve_dw=False)
        f = h_lambda(lam)
        r1 = generator_residual(fam, info, f, 2, 1e-2)
        r2 = generator_residual(fam, info, f, 2, 5e-3)
        cases[f"{name}:{f.label}"] = r2 / r1
        ok = ok and 0.3 <= r2 / r1 <= 0.7
    return _result(13, "generator residual halving ratio", cases, 0.7, ok, "ratio must lie in [0.3, 0.7]")


def c14_nonuniform() -> CriterionResult:
    cases = {}
    ok = True
    worst = -math.inf
    for name in ("translation", "dilation"):
        fam = family_lookup(name)
        probe = nonuniform_growth_probe(fam, generator(fam, resolve_dw=False), 2, 10)
        shortfall = max(f - l for l, f in zip(probe.lower_bounds, probe.floors))
        growth = probe.lower_bounds[-1] / probe.lower_bounds[0]
        cases[f"floor_shortfall[{name}]"] = shortfall
        cases[f"L10/L1[{name}]"] = growth
        worst = max(worst, shortfall)
        ok = ok and shortfall <= 1e-6 and growth > 5
    return _result(14, "non-uniform continuity witness (floor shortfall)", cases, 1e-6, ok,
                   "L_n >= floor - 1e-6, L10/L1 > 5", worst)


def c15_model_functions() -> CriterionResult:
    grid = sample_halfplane(40, rng(15), y_range=(0.2, 3.0))
    cases = {}
    for name in ("translation", "sqrt_parabolic", "dilation", "example1", "example2"):
        cases[f"functional[{name}]"] = model_function(family_lookup(name)).functional_residual
    tr = model_function(family_lookup("translation")).h.func(grid)
    sp = model_function(family_lookup("sqrt_parabolic")).h.func(grid)
    cases["translation_h=z-i"] = float(np.max(np.abs(tr - (grid - 1j))))
    cases["sqrt_parabolic_h"] = float(np.max(np.abs(sp + 1j * (grid ** 2 + 1) / 2)))
    ok = cases["translation_h=z-i"] <= 1e-8 and all(
        v <= 1e-6 for k, v in cases.items() if k != "translation_h=z-i")
    return _result(15, "model functions", cases, 1e-6, ok, "translation closed form held to 1e-8")


def c16_spectrum() -> CriterionResult:
    cases = {}
    report = point_spectrum(family_lookup("translation"), 2)
    cases["translation_sigma_pi_size"] = float(len(report.sigma_pi))
    ok = not report.sigma_pi and report.dw_kind is DWKind.BOUNDARY
    fam = family_lookup("translation")
    nu = 0.7 - 0.3j
    f = hardy_function("exp(nu z)", lambda z: np.exp(nu * z), lambda z: nu * np.exp(nu * z))
    ode, flow = eigen_residual(fam, f, nu, sample_halfplane(40, rng(16)))
    cases["eigen_ode"] = ode
    cases["eigen_flow"] = flow
    ok = ok and ode < 1e-8 and flow < 1e-8
    k0 = point_spectrum(family_lookup("example1"), 2, k_max=1, require_bounded=False).candidates[0]
    by_membership = k0.verdict is Membership.NON_MEMBER and k0.note == ""
    direct = membership(constant(1.0), 2) is Membership.NON_MEMBER
    cases["k0_rejected"] = 0.0 if (by_membership and direct) else 1.0
    ok = ok and by_membership and direct
    return _result(16, "point spectrum", cases, 1e-8, ok, measured=max(ode, flow))


def c17_sign_conditions() -> CriterionResult:
    cases = {}
    for name in ("dilation", "translation", "sqrt_parabolic", "example1"):
        info = generator(family_lookup(name))
        cases[f"-min_Im[{name}]"] = 0.0 - sign_condition(info)
    return _result(17, "Berkson-Porta sign conditions", cases, 1e-9)


CRITERIA: list[Callable[[], CriterionResult]] = [
    c01_h_lambda_norm, c02_unit_norms, c03_membership_grid, c04_growth_bound, c05_semigroup_law,
    c06_generators, c07_delta, c08_norm_formula, c09_unbounded_examples, c10_power_law_duality,
    c11_sector_mapping, c12_strong_continuity, c13_generator_identity, c14_nonuniform,
    c15_model_functions, c16_spectrum, c17_sign_conditions,
]


def run_criterion(number: int) -> CriterionResult:
    check = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        res = check()
    except HardyLabError as exc:
        res = CriterionResult(number, check.__name__[4:], False, math.nan, math.nan,
                              f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - start
    return res


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(n) for n in (numbers or range(1, len(CRITERIA) + 1))]
