"""Point spectrum of the generator Gamma f = G f' through the model function h.

Interior Denjoy-Wolff point d: candidates G'(d) k with eigenfunction h^k.
Boundary Denjoy-Wolff point: candidates G(i) nu with eigenfunction e^{nu h}.
A candidate belongs to the point spectrum exactly when its eigenfunction is in
H^p, so membership does all the filtering.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._util import as_complex
from .errors import ConfigError, HardyLabError, ModelUnavailable, UnboundedOperator
from .hardy import HardyFunction, Membership, hardy_function, membership
from .maps import cauchy_derivative
from .operators import Boundedness, classify_boundedness
from .semigroup import GeneratorInfo, ModelFunction, SemigroupFamily, generator, model_function

K_MAX = 20
RESIDUAL_TOL = 1e-6
LATTICE_TOL = 1e-6
_OCTAVES = np.arange(0, 21)


class DWKind(str, enum.Enum):
    INTERIOR = "Interior"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class NuGrid:
    """Rectangular lattice of nu values, ``n_re`` by ``n_im`` points."""

    re_min: float = -2.0
    re_max: float = 2.0
    n_re: int = 9
    im_min: float = -2.0
    im_max: float = 2.0
    n_im: int = 9

    def __post_init__(self):
        if self.n_re < 1 or self.n_im < 1:
            raise ConfigError("nu-grid needs at least one point per axis")
        if self.re_min > self.re_max or self.im_min > self.im_max:
            raise ConfigError("nu-grid bounds are reversed")

    @classmethod
    def parse(cls, text: str) -> "NuGrid":
        """Parse ``"re_min:re_max:n,im_min:im_max:n"``."""
        try:
            re_part, im_part = text.split(",")
            a, b, n = re_part.split(":")
            c, d, m = im_part.split(":")
            return cls(float(a), float(b), int(n), float(c), float(d), int(m))
        except ValueError as exc:
            raise ConfigError(f"bad nu-grid {text!r}: expected re_min:re_max:n,im_min:im_max:n") from exc

    def points(self) -> list[complex]:
        re = np.linspace(self.re_min, self.re_max, self.n_re)
        im = np.linspace(self.im_min, self.im_max, self.n_im)
        return [complex(x, y) for x in re for y in im]

    def describe(self) -> str:
        return f"{self.re_min:g}:{self.re_max:g}:{self.n_re},{self.im_min:g}:{self.im_max:g}:{self.n_im}"


@dataclass
class Candidate:
    eigenvalue: complex
    label: str
    verdict: Membership
    note: str = ""
    ode_residual: float | None = None
    flow_residual: float | None = None

    def as_json(self) -> dict:
        return {"eigenvalue": [self.eigenvalue.real, self.eigenvalue.imag], "label": self.label,
                "verdict": self.verdict.value, "note": self.note,
                "ode_residual": self.ode_residual, "flow_residual": self.flow_residual}


@dataclass
class SpectrumReport:
    dw_kind: DWKind
    candidates: list[Candidate]
    sigma_pi: list[complex]
    scan_bounds: dict
    multiplier: complex
    notes: list[str] = field(default_factory=list)

    def as_json(self) -> dict:
        return {"dw_kind": self.dw_kind.value,
                "candidates": [c.as_json() for c in self.candidates],
                "sigma_pi": [[v.real, v.imag] for v in self.sigma_pi],
                "scan_bounds": self.scan_bounds,
                "multiplier": [self.multiplier.real, self.multiplier.imag],
                "notes": list(self.notes)}


def interior_candidates(multiplier: complex, k_max: int = K_MAX) -> list[complex]:
    return [complex(multiplier) * k for k in range(k_max + 1)]


def boundary_candidates(step: complex, grid: NuGrid) -> list[complex]:
    return [complex(step) * nu for nu in grid.points()]


def _log_profile(func, pts):
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        return np.log2(np.abs(func(pts)))


def unbounded_growth(f: HardyFunction) -> bool:
    """Early NonMember test from boundary-line and vertical-ray samples.

    Members of H^p satisfy |f(z)|^p <= C / Im z, so they are bounded on
    Im z = 1 and decay up the imaginary axis.  A modulus that overflows, or
    whose log-slope per octave keeps rising above 2, rules membership out
    without quadrature.
    """
    r = 2.0 ** _OCTAVES
    for pts in (r + 1j, -r + 1j, 1j * r):
        logs = _log_profile(f.map.func, pts)
        if np.any(np.isposinf(logs)) or np.any(np.isnan(logs)):
            return True
        slopes = np.diff(logs[np.isfinite(logs)])
        if slopes.size >= 5 and np.all(np.diff(slopes[-4:]) > 0) and slopes[-1] > 2:
            return True
    return False


def bounded_below_at_infinity(h: HardyFunction) -> bool:
    """True if |h| stays away from 0 along the boundary line and the vertical ray."""
    r = 2.0 ** np.arange(10, 17)
    vals = np.concatenate([np.abs(h.map.func(pts)) for pts in (r + 1j, -r + 1j, 1j * r)])
    return bool(np.all(np.isfinite(vals)) and vals.min() > 1e-3 * max(vals.max(), 1e-300))


def eigen_residual(fam: SemigroupFamily, f: HardyFunction, lam: complex, grid, t_list=(0.25, 1.0),
                   info: GeneratorInfo | None = None) -> tuple[float, float]:
    """(max |G f' - lam f|, max |f(phi_t) - e^{lam t} f|) over the grid and times."""
    info = info if info is not None else generator(fam, resolve_dw=False)
    z = as_complex(grid)
    fz = f.map.func(z)
    df = f.map.deriv(z) if f.map.deriv is not None else cauchy_derivative(f.map.func, z)
    ode = float(np.max(np.abs(info.G.func(z) * df - lam * fz)))
    flow = max(float(np.max(np.abs(f.map.func(fam.flow(t, z)) - np.exp(lam * t) * fz))) for t in t_list)
    return ode, flow


def lattice_consistent(report: SpectrumReport, tol: float = LATTICE_TOL) -> bool:
    """Interior case: differences of point-spectrum values are integer multiples of G'(d)."""
    if report.dw_kind is not DWKind.INTERIOR or len(report.sigma_pi) < 2:
        return True
    base = report.sigma_pi[0]
    for lam in report.sigma_pi[1:]:
        k = (lam - base) / report.multiplier
        if abs(k - round(k.real)) > tol:
            return False
    return True


def power_eigenfunction(h, k: int) -> HardyFunction:
    hf, hd = h.func, h.deriv
    if k == 0:
        return hardy_function("h^0", lambda z: np.ones_like(as_complex(z)),
                              lambda z: np.zeros_like(as_complex(z)))
    return hardy_function(f"h^{k}", lambda z: hf(z) ** k, lambda z: k * hf(z) ** (k - 1) * hd(z))


def exp_eigenfunction(h, nu: complex) -> HardyFunction:
    hf, hd = h.func, h.deriv
    return hardy_function(f"exp({nu.real:g}{nu.imag:+g}i h)", lambda z: np.exp(nu * hf(z)),
                          lambda z: nu * hd(z) * np.exp(nu * hf(z)))


def _test_candidate(fam, info, f, lam, p, grid) -> Candidate:
    if unbounded_growth(f):
        return Candidate(lam, f.label, Membership.NON_MEMBER, "unbounded growth")
    verdict = membership(f, p)
    cand = Candidate(lam, f.label, verdict)
    if verdict is Membership.MEMBER:
        cand.ode_residual, cand.flow_residual = eigen_residual(fam, f, lam, grid, info=info)
        if max(cand.ode_residual, cand.flow_residual) > RESIDUAL_TOL:
            cand.verdict = Membership.INCONCLUSIVE
            cand.note = "member but eigen-equation residual too large"
    return cand


def point_spectrum(fam: SemigroupFamily, p: float, k_max: int = K_MAX, nu_grid: NuGrid | None = None,
                   require_bounded: bool = True, info: GeneratorInfo | None = None,
                   model: ModelFunction | None = None) -> SpectrumReport:
    """Scan the candidate lattice and keep the eigenvalues whose eigenfunction is in H^p."""
    if require_bounded:
        bv = classify_boundedness(fam, p)
        if bv.verdict is not Boundedness.BOUNDED:
            raise UnboundedOperator(f"{fam.name}: semigroup is {bv.verdict.value}")
    info = info if info is not None else generator(fam)
    if model is None:
        try:
            model = model_function(fam, info)
        except HardyLabError as exc:
            raise ModelUnavailable(f"model function for {fam.name}: {exc}") from exc
    grid = np.array([0.3 + 0.5j, -0.7 + 1.2j, 1.1 + 2.0j, 0.2 + 0.9j])
    notes = []
    candidates = []
    if model.kind == "koenigs":
        kind = DWKind.INTERIOR
        if k_max < 0:
            raise ConfigError("k_max must be >= 0")
        scan = {"k_max": k_max}
        bounded_below = None
        for k, lam in enumerate(interior_candidates(model.coefficient, k_max)):
            f = power_eigenfunction(model.h, k)
            if k >= 1:
                if bounded_below is None:
                    bounded_below = bounded_below_at_infinity(hardy_function("h", model.h.func))
                    if bounded_below:
                        notes.append("|h| bounded below at infinity: every h^k with k >= 1 is NonMember")
                if bounded_below:
                    candidates.append(Candidate(lam, f.label, Membership.NON_MEMBER, "|h| bounded below"))
                    continue
            candidates.append(_test_candidate(fam, info, f, lam, p, grid))
    else:
        kind = DWKind.BOUNDARY
        nu_grid = nu_grid if nu_grid is not None else NuGrid()
        scan = {"nu_grid": nu_grid.describe()}
        for nu in nu_grid.points():
            f = exp_eigenfunction(model.h, nu)
            candidates.append(_test_candidate(fam, info, f, model.coefficient * nu, p, grid))
    sigma = [c.eigenvalue for c in candidates if c.verdict is Membership.MEMBER]
    return SpectrumReport(kind, candidates, sigma, scan, complex(model.coefficient), notes)

