"""Semigroups of analytic self-maps of U.

Covers the semigroup axioms, the generator ``G = d/dt phi_t |_{t=0}``, the
Denjoy-Wolff point, angular derivatives at infinity, the limit ``delta`` of
``G(z)/z`` and the associated univalent (Koenigs or Abel) function ``h``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ._util import as_complex, extrapolate_to_zero, out, rng, sample_halfplane, sample_halfplane_wide
from .cayley import Target, _to_disc, _to_halfplane, nt_path
from .errors import (ConvergenceError, DegenerateMultiplier, DivergenceDetected, DWMismatch,
                     InfimumMismatch, NoConvergence, ParamError, PathThroughZero,
                     RayDisagreement, UnknownFamily)
from .maps import AnalyticMap, Domain, cauchy_derivative, check_domain, derivative

Flow = Callable[[float, np.ndarray], np.ndarray]

GENERATOR_STEPS = (1e-2, 1e-3, 1e-4)
GENERATOR_LEVEL_TOL = 1e-4
CLOSED_FORM_TOL = 1e-6
FLOW_IDENTITY_TOL = 1e-5
RAY_RTOL = 1e-3
RAY_POINTS = 11
DW_MAX_ITER = 1000
DW_STEP_TOL = 1e-8
DW_CLASSIFY_TOL = 1e-6
MODEL_TOL = 1e-6
ZERO_CLEARANCE = 1e-2


# ---------------------------------------------------------------------------
# extended points of the closed half-plane

@dataclass(frozen=True)
class ExtendedPoint:
    """A point of U, of the real line, or infinity."""

    kind: str  # "interior" | "boundary" | "infinity"
    value: complex | None = None

    @classmethod
    def infinity(cls):
        return cls("infinity")

    @property
    def is_infinity(self):
        return self.kind == "infinity"

    @property
    def is_interior(self):
        return self.kind == "interior"

    def as_json(self):
        if self.is_infinity:
            return "infinity"
        if self.kind == "boundary":
            return {"kind": "boundary", "re": self.value.real}
        return {"kind": "interior", "re": self.value.real, "im": self.value.imag}

    def __str__(self):
        if self.is_infinity:
            return "infinity"
        return f"{self.value.real:g}" if self.kind == "boundary" else f"{self.value:g}"


def chordal(a, b) -> float:
    """Chordal distance on the Riemann sphere; ``math.inf`` stands for infinity."""
    ainf, binf = not np.isfinite(a), not np.isfinite(b)
    if ainf and binf:
        return 0.0
    if ainf or binf:
        w = b if ainf else a
        return 2.0 / math.sqrt(1.0 + abs(w) ** 2)
    return 2.0 * abs(a - b) / math.sqrt((1.0 + abs(a) ** 2) * (1.0 + abs(b) ** 2))


def _classify_limit(z: complex) -> ExtendedPoint:
    if not np.isfinite(z) or chordal(z, math.inf) < DW_CLASSIFY_TOL:
        return ExtendedPoint.infinity()
    if chordal(z, complex(z.real, 0.0)) < DW_CLASSIFY_TOL:
        return ExtendedPoint("boundary", complex(z.real, 0.0))
    return ExtendedPoint("interior", complex(z))


def _point_distance(a: ExtendedPoint, b: ExtendedPoint) -> float:
    va = math.inf if a.is_infinity else a.value
    vb = math.inf if b.is_infinity else b.value
    return chordal(va, vb)


# ---------------------------------------------------------------------------
# families

@dataclass(frozen=True)
class SemigroupFamily:
    """t -> phi_t as a vectorised flow ``flow(t, z)`` plus known closed forms."""

    name: str
    flow: Flow
    params: Mapping[str, complex] = field(default_factory=dict)
    flow_deriv: Flow | None = None
    closed_form_generator: AnalyticMap | None = None
    closed_form_dw: ExtendedPoint | None = None
    closed_form_phi1_inf: float | None = None
    trivial: bool = False

    def at(self, t: float) -> AnalyticMap:
        if t < 0:
            raise ParamError("semigroup time must be >= 0")
        deriv = None
        if self.flow_deriv is not None:
            fd = self.flow_deriv
            deriv = lambda z: fd(t, z)  # noqa: E731
        return AnalyticMap(f"{self.name}[t={t:g}]", lambda z: self.flow(t, z), Domain.HALF_PLANE,
                           {**self.params, "t": t}, deriv, self_map=True)

    def __call__(self, t, z):
        return out(self.flow(t, check_domain(z, Domain.HALF_PLANE)), z)


def _map(name, func, deriv, params=None):
    return AnalyticMap(name, func, Domain.HALF_PLANE, dict(params or {}), deriv)


def _elliptic_flow(c):
    def flow(t, z):
        q = math.exp(-c * t)
        return 1j * (z + 1j + q * (z - 1j)) / (z + 1j - q * (z - 1j))

    def flow_deriv(t, z):
        q = math.exp(-c * t)
        w = (z - 1j) / (z + 1j)
        return (2j / (1 - q * w) ** 2) * q * (2j / (z + 1j) ** 2)

    gen = _map("G", lambda z: c * 1j * (z * z + 1) / 2, lambda z: c * 1j * z, {"c": c})
    return flow, flow_deriv, gen


def _example2_flow(t, z):
    if t == 0:
        return z + 0j
    return np.exp(math.exp(-t) * np.log(z + 1)) - 1


def _example2_deriv(t, z):
    q = math.exp(-t)
    return q * np.exp((q - 1) * np.log(z + 1))


def trivial() -> SemigroupFamily:
    zero = _map("G", lambda z: np.zeros_like(z), lambda z: np.zeros_like(z))
    return SemigroupFamily("trivial", lambda t, z: z + 0j, {}, lambda t, z: np.ones_like(z),
                           zero, None, 1.0, trivial=True)


def dilation(c: float = 1.0) -> SemigroupFamily:
    c = complex(c)
    if c.imag != 0:
        raise ParamError("dilation family needs real c")
    c = c.real
    if c == 0:
        return trivial()
    dw = ExtendedPoint.infinity() if c > 0 else ExtendedPoint("boundary", 0j)
    return SemigroupFamily(
        "dilation", lambda t, z: math.exp(c * t) * z, {"c": c},
        lambda t, z: np.full_like(z, math.exp(c * t)),
        _map("G", lambda z: c * z, lambda z: np.full_like(z, c), {"c": c}),
        dw, math.exp(c))


def translation(b: complex = 1.0) -> SemigroupFamily:
    b = complex(b)
    if b.imag < 0:
        raise ParamError("translation family needs Im b >= 0")
    if b == 0:
        return trivial()
    return SemigroupFamily(
        "translation", lambda t, z: z + b * t, {"b": b}, lambda t, z: np.ones_like(z),
        _map("G", lambda z: np.full_like(z, b), lambda z: np.zeros_like(z), {"b": b}),
        ExtendedPoint.infinity(), 1.0)


def example1() -> SemigroupFamily:
    flow, flow_deriv, gen = _elliptic_flow(1.0)
    return SemigroupFamily("example1", flow, {}, flow_deriv, gen, ExtendedPoint("interior", 1j), 0.0)


def mobius_elliptic(c: float = 1.0) -> SemigroupFamily:
    c = complex(c)
    if c.imag != 0 or not c.real > 0:
        raise ParamError("mobius_elliptic needs real c > 0")
    flow, flow_deriv, gen = _elliptic_flow(c.real)
    return SemigroupFamily("mobius_elliptic", flow, {"c": c.real}, flow_deriv, gen,
                           ExtendedPoint("interior", 1j), 0.0)


def example2() -> SemigroupFamily:
    gen = _map("G", lambda z: -(z + 1) * np.log(z + 1), lambda z: -np.log(z + 1) - 1)
    return SemigroupFamily("example2", _example2_flow, {}, _example2_deriv, gen,
                           ExtendedPoint("boundary", 0j), 0.0)


def sqrt_parabolic() -> SemigroupFamily:
    return SemigroupFamily(
        "sqrt_parabolic",
        lambda t, z: 1j * np.sqrt(t - z * z), {},
        lambda t, z: -1j * z / np.sqrt(t - z * z),
        _map("G", lambda z: -1 / (2 * z), lambda z: 1 / (2 * z * z)),
        ExtendedPoint.infinity(), 1.0)


FAMILIES = {
    "trivial": trivial,
    "dilation": dilation,
    "translation": translation,
    "example1": example1,
    "example2": example2,
    "sqrt_parabolic": sqrt_parabolic,
    "mobius_elliptic": mobius_elliptic,
}


def family_lookup(name: str, params: Mapping[str, complex] | None = None) -> SemigroupFamily:
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None
    try:
        return builder(**dict(params or {}))
    except TypeError as exc:
        raise ParamError(f"bad parameters for {name}: {exc}") from None


def verify_semigroup_law(fam: SemigroupFamily, grid, times) -> float:
    """max |phi_{t+s}(z) - phi_t(phi_s(z))| over the grid and (t, s) pairs."""
    z = check_domain(grid, Domain.HALF_PLANE)
    worst = 0.0
    for t, s in times:
        if t < 0 or s < 0:
            raise ParamError("times must be >= 0")
        gap = np.abs(fam.flow(t + s, z) - fam.flow(t, fam.flow(s, z)))
        worst = max(worst, float(np.max(gap)))
    return worst


def identity_residual(fam: SemigroupFamily, grid) -> float:
    z = check_domain(grid, Domain.HALF_PLANE)
    return float(np.max(np.abs(fam.flow(0.0, z) - z)))


def continuity_jumps(fam: SemigroupFamily, grid, t_max: float = 2.0, steps=(20, 40, 80)):
    """Max |phi_{t+dt}(z) - phi_t(z)| over [0, t_max] x grid for each step count."""
    z = check_domain(grid, Domain.HALF_PLANE)
    jumps = []
    for n in steps:
        ts = np.linspace(0.0, t_max, n + 1)
        vals = np.array([fam.flow(t, z) for t in ts])
        jumps.append(float(np.max(np.abs(np.diff(vals, axis=0)))))
    return jumps


# ---------------------------------------------------------------------------
# generators

def _difference_quotients(flow: Flow, z):
    return [(flow(t, z) - z) / t for t in GENERATOR_STEPS]


def numeric_generator(fam: SemigroupFamily, z):
    """G(z) as the Richardson limit of (phi_t(z) - z)/t, t = 1e-2, 1e-3, 1e-4."""
    zz = check_domain(z, Domain.HALF_PLANE)
    return out(_richardson_generator(fam.flow, zz), z)


def _richardson_generator(flow: Flow, z):
    top, lower = extrapolate_to_zero(GENERATOR_STEPS, _difference_quotients(flow, z))
    gap = np.abs(top - lower) / np.maximum(1.0, np.abs(top))
    if np.any(~(gap <= GENERATOR_LEVEL_TOL)):
        raise ConvergenceError(f"generator Richardson levels disagree by {np.nanmax(gap):.3g}")
    return top


def _time_derivative(flow: Flow, t: float, z, h: float = 1e-3):
    d1 = (flow(t + h, z) - flow(t - h, z)) / (2 * h)
    d2 = (flow(t + h / 2, z) - flow(t - h / 2, z)) / h
    return (4 * d2 - d1) / 3


@dataclass
class GeneratorInfo:
    """Generator G with its Denjoy-Wolff point and, once computed, delta."""

    G: AnalyticMap
    dw: ExtendedPoint | None
    delta: float | None = None
    delta_derivative: float | None = None
    closed_form_deviation: float | None = None
    flow_residual: float = 0.0

    @property
    def berkson_porta_F(self) -> AnalyticMap | None:
        """F(z) = G(z) / ((z - conj d)(z - d)) for an interior DW point d."""
        if self.dw is None or not self.dw.is_interior:
            return None
        d = self.dw.value
        g = self.G.func
        return AnalyticMap("F", lambda z: g(z) / ((z - d.conjugate()) * (z - d)))


def generator(fam: SemigroupFamily, grid=None, resolve_dw: bool = True) -> GeneratorInfo:
    """Generator of ``fam``, closed form when known, validated against the numeric limit.

    Also checks the flow identity ``G(phi_t(z)) = d/dt phi_t(z)`` at t = 0.5.
    """
    z = sample_halfplane(40, rng(11)) if grid is None else check_domain(grid, Domain.HALF_PLANE)
    numeric = _richardson_generator(fam.flow, z)
    deviation = None
    if fam.closed_form_generator is not None:
        G = fam.closed_form_generator
        closed = G.func(z)
        deviation = float(np.max(np.abs(numeric - closed) / np.maximum(1.0, np.abs(closed))))
        if deviation > CLOSED_FORM_TOL:
            raise ConvergenceError(f"numeric generator deviates from closed form by {deviation:.3g}")
    else:
        flow = fam.flow
        G = AnalyticMap("G", lambda w: _richardson_generator(flow, w))
    flow_res = float(np.max(np.abs(G.func(fam.flow(0.5, z)) - _time_derivative(fam.flow, 0.5, z))
                            / np.maximum(1.0, np.abs(G.func(z)))))
    if flow_res > FLOW_IDENTITY_TOL:
        raise ConvergenceError(f"flow identity G(phi_t) = d/dt phi_t fails by {flow_res:.3g}")
    dw = None
    if resolve_dw and not is_trivial(fam, z, G):
        dw = dw_point(fam)
    return GeneratorInfo(G, dw, closed_form_deviation=deviation, flow_residual=flow_res)


def is_trivial(fam: SemigroupFamily, grid=None, G: AnalyticMap | None = None) -> bool:
    if fam.trivial:
        return True
    z = sample_halfplane(40, rng(11)) if grid is None else as_complex(grid)
    values = G.func(z) if G is not None else _richardson_generator(fam.flow, z)
    return bool(np.max(np.abs(values)) < 1e-12)


def sign_condition(info: GeneratorInfo, n: int = 1000) -> float | None:
    """min Im G (DW at infinity) or min Im F (interior DW) over ``n`` sample points.

    Returns None when neither condition applies (trivial or real boundary DW).
    """
    if info.dw is None:
        return None
    z = sample_halfplane_wide(n, rng(23), r_range=(1e-2, 1e3))
    if info.dw.is_infinity:
        return float(np.min(info.G.func(z).imag))
    if info.dw.is_interior:
        return float(np.min(info.berkson_porta_F.func(z).imag))
    return None


def dw_point(fam: SemigroupFamily, z0: complex = 1j, max_iter: int = DW_MAX_ITER) -> ExtendedPoint:
    """Denjoy-Wolff point by iterating phi_1 from ``z0`` (chordal metric).

    If ``max_iter`` iterations do not settle, the iteration continues with
    dyadic times phi_{2^k}(z0), which the semigroup law makes available
    directly; parabolic families need this.
    """
    if fam.trivial:
        raise ParamError("the trivial semigroup has no Denjoy-Wolff point")
    z = complex(z0)
    found = None
    for _ in range(max_iter):
        nxt = complex(fam.flow(1.0, np.asarray(z)))
        if chordal(z, nxt) < DW_STEP_TOL:
            found = nxt
            break
        z = nxt
        if not np.isfinite(z):
            found = z
            break
    if found is None:
        prev = z
        for k in range(10, 64):
            with np.errstate(over="ignore", invalid="ignore"):
                nxt = complex(fam.flow(2.0 ** k, np.asarray(complex(z0))))
            if not np.isfinite(nxt) or chordal(prev, nxt) < DW_STEP_TOL:
                found = nxt
                break
            prev = nxt
    if found is None:
        raise NoConvergence(
            "iterates do not converge (elliptic automorphism rotation or too slow)")
    point = _classify_limit(found)
    if fam.closed_form_dw is not None and _point_distance(point, fam.closed_form_dw) > DW_CLASSIFY_TOL:
        raise DWMismatch(f"iterated DW point {point} disagrees with closed form {fam.closed_form_dw}")
    return point


# ---------------------------------------------------------------------------
# angular limits at infinity

@dataclass(frozen=True)
class RayProfile:
    radii: np.ndarray
    vertical: np.ndarray
    tilted: np.ndarray

    @property
    def limit(self) -> complex:
        return complex(self.vertical[-1])

    def rays_agree(self, rtol: float = RAY_RTOL) -> bool:
        a, b = self.vertical[-1], self.tilted[-1]
        return bool(abs(a - b) <= rtol * max(1.0, abs(a), abs(b)))

    def settled(self, rtol: float = RAY_RTOL) -> bool:
        v = self.vertical
        return bool(abs(v[-1] - v[-2]) <= rtol * max(1.0, abs(v[-1])))

    def growing(self) -> bool:
        mags = np.abs(self.vertical[-4:])
        return bool(np.all(np.diff(mags) > 0))


def ray_profile(fun, opening: float = 1.0, n: int = RAY_POINTS) -> RayProfile:
    """``fun`` along the vertical ray and the ray at half the opening of T_opening."""
    zv = nt_path(Target.INFINITY_IN_U, opening, n)
    zt = nt_path(Target.INFINITY_IN_U, opening, n, tilt=0.5)
    return RayProfile(np.abs(zv), np.asarray(fun(zv)), np.asarray(fun(zt)))


def sampled_infimum(phi: AnalyticMap, n: int = 1000) -> float:
    """min of Im phi(z) / Im z over ``n`` points of U with log-uniform modulus."""
    z = sample_halfplane_wide(n, rng(7))
    return float(np.min(phi.func(z).imag / z.imag))


def angular_derivative_profile(phi: AnalyticMap, opening: float = 1.0) -> RayProfile:
    return ray_profile(lambda z: phi.func(z) / z, opening)


def angular_derivative_at_infinity(phi: AnalyticMap, opening: float = 1.0) -> float:
    """phi'(inf) = angular limit of phi(z)/z, cross-checked by the Julia-Caratheodory infimum."""
    prof = angular_derivative_profile(phi, opening)
    if not prof.rays_agree():
        raise RayDisagreement(f"ray estimates {prof.vertical[-1]:.6g} vs {prof.tilted[-1]:.6g}")
    limit = max(0.0, prof.limit.real)
    inf = sampled_infimum(phi)
    if inf < limit - RAY_RTOL * max(1.0, limit):
        raise InfimumMismatch(f"sampled infimum {inf:.6g} below ray limit {limit:.6g}")
    return limit


def angular_derivative_at_one(psi: AnalyticMap, opening: float = 2.0) -> float:
    """psi'(1) for a self-map of D fixing 1 non-tangentially: limit of (1 - psi(w))/(1 - w)."""
    if psi.domain is not Domain.DISC:
        raise ParamError("angular derivative at 1 needs a map of the disc")
    vals = []
    for tilt in (0.0, 0.5):
        w = nt_path(Target.ONE_IN_D, opening, RAY_POINTS, tilt=tilt)
        vals.append(complex(((1 - psi.func(w)) / (1 - w))[-1]))
    a, b = vals
    if abs(a - b) > RAY_RTOL * max(1.0, abs(a), abs(b)):
        raise RayDisagreement(f"disc ray estimates {a:.6g} vs {b:.6g}")
    return a.real


def delta_limit(info: GeneratorInfo, opening: float = 1.0) -> float:
    """delta = angular limit of G(z)/z, checked against the angular limit of G'(z).

    Stores ``delta`` (and the G' limit) into ``info``.
    """
    g = info.G
    ratio = ray_profile(lambda z: g.func(z) / z, opening)
    if not ratio.settled():
        if ratio.growing():
            raise DivergenceDetected(f"|G(iR)/iR| keeps growing (|G/z| = {abs(ratio.limit):.4g} at R = 1e6)")
        raise ConvergenceError("G(z)/z does not settle along the ray")
    if g.deriv is not None:
        dfun = g.deriv
    else:
        dfun = lambda z: cauchy_derivative(g.func, z)  # noqa: E731
    dprof = ray_profile(dfun, opening)
    if not dprof.settled():
        raise ConvergenceError("G'(z) does not settle along the ray")
    for prof, what in ((ratio, "G(z)/z"), (dprof, "G'(z)")):
        if not prof.rays_agree():
            raise RayDisagreement(f"{what}: ray estimates disagree")
    lim, dlim = ratio.limit, dprof.limit
    if abs(lim - dlim) > RAY_RTOL * max(1.0, abs(lim)):
        raise ConvergenceError(f"angular limits of G/z ({lim:.6g}) and G' ({dlim:.6g}) differ")
    if abs(lim.imag) > RAY_RTOL:
        raise ConvergenceError(f"delta is not real: {lim:.6g}")
    info.delta = lim.real
    info.delta_derivative = dlim.real
    return info.delta


def conjugate_generator_residual(fam: SemigroupFamily, grid=None, info: GeneratorInfo | None = None) -> float:
    """max |G~(gamma^{-1}(z)) - 2i/(z+i)^2 G(z)| with G~ the numeric generator of the disc family."""
    z = sample_halfplane(50, rng(31)) if grid is None else check_domain(grid, Domain.HALF_PLANE)

    def disc_flow(t, w):
        return _to_disc(fam.flow(t, _to_halfplane(w)))

    g_disc = _richardson_generator(disc_flow, _to_disc(z))
    G = info.G if info is not None else (fam.closed_form_generator or
                                         AnalyticMap("G", lambda w: _richardson_generator(fam.flow, w)))
    return float(np.max(np.abs(g_disc - 2j / (z + 1j) ** 2 * G.func(z))))


# ---------------------------------------------------------------------------
# model functions

@dataclass(frozen=True)
class ModelFunction:
    """Associated univalent function h.

    Koenigs (interior DW d): h(phi_t) = e^{coefficient t} h, h(d)=0, h'(d)=1.
    Abel (boundary DW): h(phi_t) = h + coefficient t, h(i)=0, h'(i)=1.
    """

    h: AnalyticMap
    kind: str
    coefficient: complex
    base_point: complex
    normalization_error: float
    functional_residual: float


_PATH_NODES, _PATH_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _graded_nodes(start, end, m):
    """Nodes and weights on [start, end], geometric in the distance from ``start``.

    The grading scale is ``min(Im start, 1)``: integrand singularities lie on
    the real axis, so features near ``start`` are no smaller than that.
    """
    length = np.maximum(np.abs(end - start), 1e-300)[:, None]
    eps = np.clip(start.imag, 1e-12, 1.0)[:, None]
    ratio = np.log1p(length / eps)
    u = ((np.arange(m)[:, None] + (_PATH_NODES + 1) / 2) / m).ravel()
    w = np.tile(_PATH_WEIGHTS / (2 * m), m)
    r = eps * np.expm1(u * ratio)
    jac = eps * ratio * np.exp(u * ratio)
    direction = ((end - start) / length[:, 0])[:, None]
    return start[:, None] + direction * r, direction * jac * w


def path_integral(integrand, a: complex, z, tol: float = 1e-10, max_segments: int = 1024):
    """Integral of ``integrand`` along the segments from ``a`` to each point of ``z``.

    Each segment is split at its midpoint and each half is graded
    geometrically towards its own endpoint, so paths that are long or that end
    close to the real axis are resolved.  Composite 16-point Gauss-Legendre,
    doubling the panel count until two passes agree to ``tol`` (relative
    above 1).
    """
    z = as_complex(z)
    flat = z.ravel()
    start = np.full_like(flat, a)
    mid = 0.5 * (start + flat)
    prev = None
    m = 4
    while m <= max_segments:
        cur = 0j
        for lo, sign in ((start, 1.0), (flat, -1.0)):
            nodes, weights = _graded_nodes(lo, mid, m)
            cur = cur + sign * np.sum(integrand(nodes) * weights, axis=1)
        cur = np.where(flat == a, 0j, cur)
        if prev is not None and np.all(np.abs(cur - prev) <= tol * np.maximum(1.0, np.abs(cur))):
            return cur.reshape(z.shape)
        prev = cur
        m *= 2
    raise ConvergenceError("path integral did not converge")


def _check_path(G_reg, a, z, scale):
    """Reject paths passing close to a zero of G in U.

    Along geometrically graded samples, ``|G / G'|`` estimates the distance to
    the nearest zero; it must not be small compared with ``Im`` of the sample.
    Zeros on the real axis and decay towards infinity pass.
    """
    flat = as_complex(z).ravel()
    length = np.maximum(np.abs(flat - a), 1e-300)[:, None]
    s = np.expm1(np.linspace(0.0, 1.0, 513)[1:] * np.log1p(length)) / length
    pts = a + (flat - a)[:, None] * s
    vals = G_reg(pts)
    if np.any(np.abs(vals) < 1e-300 * max(scale, 1.0)):
        raise PathThroughZero("integration path passes through a zero of G")
    with np.errstate(divide="ignore", invalid="ignore"):
        slope = (vals[:, 2:] - vals[:, :-2]) / (pts[:, 2:] - pts[:, :-2])
        dist = np.abs(vals[:, 1:-1] / slope)
    near = dist < ZERO_CLEARANCE * pts[:, 1:-1].imag
    if np.any(near & np.isfinite(dist)):
        raise PathThroughZero("integration path passes too close to a zero of G")


def model_function(fam: SemigroupFamily, info: GeneratorInfo | None = None, grid=None,
                   times=(0.25, 1.0)) -> ModelFunction:
    """Koenigs or Abel function of a non-trivial family by path integration.

    Interior DW d: h(z) = (z-d) exp(int_d^z [G'(d)/G - 1/(zeta-d)]).
    Boundary DW:   h(z) = int_i^z G(i)/G.
    """
    info = info if info is not None else generator(fam)
    if info.dw is None:
        raise ParamError("model function needs a non-trivial family")
    G = info.G
    g = G.func
    z_grid = sample_halfplane(40, rng(41), y_range=(0.2, 3.0)) if grid is None else check_domain(grid, Domain.HALF_PLANE)

    if info.dw.is_interior:
        d = info.dw.value
        mult = complex(derivative(G, d))
        if abs(mult) < 1e-10:
            raise DegenerateMultiplier("G'(d) vanishes")

        def integrand(zeta):
            return mult / g(zeta) - 1 / (zeta - d)

        def h_func(z):
            z = as_complex(z)
            at_d = z == d
            z_safe = np.where(at_d, d + 0.5j, z)
            _check_path(lambda u: g(u) / (u - d), d, z_safe, abs(mult))
            return np.where(at_d, 0j, (z - d) * np.exp(path_integral(integrand, d, z_safe)))

        def h_deriv(z):
            z = as_complex(z)
            near = np.abs(z - d) < 1e-8
            safe = np.where(near, d + 1.0, z)
            val = mult * h_func(safe) / g(safe)
            return np.where(near, 1.0 + 0j, val)

        kind, coef, base = "koenigs", mult, d
    else:
        step = complex(g(np.asarray(1j)))

        def h_func(z):
            z = as_complex(z)
            _check_path(g, 1j, z, abs(step))
            return path_integral(lambda u: step / g(u), 1j, z)

        def h_deriv(z):
            return step / g(as_complex(z))

        kind, coef, base = "abel", step, 1j

    h = AnalyticMap(f"h[{fam.name}]", h_func, Domain.HALF_PLANE, {}, h_deriv)
    h0 = complex(h_func(np.asarray(base)))
    dh0 = complex(cauchy_derivative(h_func, np.asarray(base)))
    norm_err = max(abs(h0), abs(dh0 - 1))
    if norm_err > 1e-8:
        raise ConvergenceError(f"model function normalisation off by {norm_err:.3g}")

    hz = h_func(z_grid)
    residual = 0.0
    for t in times:
        lhs = h_func(fam.flow(t, z_grid))
        rhs = np.exp(coef * t) * hz if kind == "koenigs" else hz + coef * t
        residual = max(residual, float(np.max(np.abs(lhs - rhs))))
    if residual > MODEL_TOL:
        raise ConvergenceError(f"functional equation residual {residual:.3g} exceeds {MODEL_TOL}")
    return ModelFunction(h, kind, coef, base, norm_err, residual)
