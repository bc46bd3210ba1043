"""Analytic maps on the upper half-plane U and the unit disc D.

A map is an evaluation contract (a vectorised numpy callable) plus metadata;
nothing here is symbolic.  Fractional powers and logarithms use the principal
branch, ``Arg`` in ``(-pi, pi]``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ._util import as_complex, out, rng, sample_halfplane_wide
from .errors import ConvergenceError, DomainError, ParamError, UnknownCatalogEntry

ComplexFn = Callable[[np.ndarray], np.ndarray]

CAUCHY_NODES = 64
CAUCHY_TOL = 1e-8


class Domain(enum.Enum):
    HALF_PLANE = "halfplane"
    DISC = "disc"


def check_domain(z, domain: Domain) -> np.ndarray:
    z = as_complex(z)
    if domain is Domain.HALF_PLANE:
        bad = ~(z.imag > 0)
        what = "Im z <= 0"
    else:
        bad = ~(np.abs(z) < 1)
        what = "|w| >= 1"
    if np.any(bad):
        first = z[bad].ravel()[0] if z.ndim else z
        raise DomainError(f"point {complex(first)} outside {domain.value} ({what})")
    return z


@dataclass(frozen=True)
class AnalyticMap:
    """Holomorphic function on U or D.

    ``func`` is applied elementwise to complex arrays without domain checks;
    calling the map itself checks the domain first.  ``self_map`` flags maps
    sending the domain into itself.
    """

    name: str
    func: ComplexFn
    domain: Domain = Domain.HALF_PLANE
    params: Mapping[str, complex] = field(default_factory=dict)
    deriv: ComplexFn | None = None
    self_map: bool = False

    def __call__(self, z):
        return eval_map(self, z)

    def derivative(self, z, method="auto"):
        return derivative(self, z, method=method)


def eval_map(m: AnalyticMap, z):
    zz = check_domain(z, m.domain)
    return out(m.func(zz), z)


def cauchy_radius(z: np.ndarray, domain: Domain) -> np.ndarray:
    if domain is Domain.HALF_PLANE:
        return np.minimum(z.imag, 1.0) / 2
    return np.minimum(1.0 - np.abs(z), 1.0) / 2


def _cauchy_trapezoid(func, z, r, n):
    u = r[..., None] * np.exp(2j * np.pi * np.arange(n) / n)
    vals = func(z[..., None] + u)
    return np.mean(vals / u, axis=-1)


def cauchy_derivative(func: ComplexFn, z, domain: Domain = Domain.HALF_PLANE,
                      n: int = CAUCHY_NODES, tol: float = CAUCHY_TOL) -> np.ndarray:
    """f'(z) from the trapezoid rule on the Cauchy integral over a circle.

    The circle radius is half the distance-like bound ``min(Im z, 1)`` (or
    ``min(1-|w|, 1)`` on the disc).  The rule is repeated with ``2n`` nodes
    and the two results must agree to ``tol`` (relative above 1).
    """
    z = as_complex(z)
    r = cauchy_radius(z, domain)
    coarse = _cauchy_trapezoid(func, z, r, n)
    fine = _cauchy_trapezoid(func, z, r, 2 * n)
    gap = np.abs(fine - coarse) / np.maximum(1.0, np.abs(fine))
    if np.any(~(gap <= tol)):
        raise ConvergenceError(f"Cauchy derivative unstable under node doubling (gap {np.nanmax(gap):.3g})")
    return fine


def derivative(m: AnalyticMap, z, method: str = "auto"):
    """Derivative of ``m`` at ``z``.

    ``method="auto"`` uses the closed form when the map carries one and the
    Cauchy integral otherwise; ``method="cauchy"`` forces the integral.
    """
    zz = check_domain(z, m.domain)
    if method == "auto" and m.deriv is not None:
        return out(m.deriv(zz), z)
    if method not in ("auto", "cauchy"):
        raise ParamError(f"unknown derivative method {method!r}")
    return out(cauchy_derivative(m.func, zz, m.domain), z)


def cauchy_riemann_residual(m: AnalyticMap, z, h: float = 1e-5) -> float:
    """Max of |f_y - i f_x| (central differences), scaled by max(1, |f_x|)."""
    z = check_domain(z, m.domain)
    f = m.func
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return float(np.max(np.abs(fy - 1j * fx) / np.maximum(1.0, np.abs(fx))))


def check_self_map(m: AnalyticMap, n: int = 1000, seed_offset: int = 0) -> bool:
    """Sample test of the self-map flag: Im m(z) > 0 on ``n`` random z in U."""
    if m.domain is not Domain.HALF_PLANE:
        w = rng(seed_offset).uniform(0, 0.999, n) * np.exp(2j * np.pi * rng(seed_offset + 1).uniform(size=n))
        return bool(np.all(np.abs(m.func(w)) < 1))
    z = sample_halfplane_wide(n, rng(seed_offset), r_range=(1e-3, 1e4))
    return bool(np.all(m.func(z).imag > 0))


# ---------------------------------------------------------------------------
# catalog

def identity() -> AnalyticMap:
    return AnalyticMap("identity", lambda z: z, deriv=lambda z: np.ones_like(z), self_map=True)


def dilation(c: float) -> AnalyticMap:
    c = _real(c, "c")
    if c <= 0:
        raise ParamError("dilation needs c > 0 to map U into U")
    return AnalyticMap("dilation", lambda z: c * z, params={"c": c},
                       deriv=lambda z: np.full_like(z, c), self_map=True)


def translation(b: complex) -> AnalyticMap:
    b = complex(b)
    if b.imag < 0:
        raise ParamError("translation needs Im b >= 0")
    return AnalyticMap("translation", lambda z: z + b, params={"b": b},
                       deriv=lambda z: np.ones_like(z), self_map=True)


def mobius(a: float, b: float, c: float, d: float) -> AnalyticMap:
    a, b, c, d = (_real(v, k) for v, k in zip((a, b, c, d), "abcd"))
    det = a * d - b * c
    if det <= 0:
        raise ParamError("mobius needs real coefficients with ad - bc > 0")
    return AnalyticMap("mobius", lambda z: (a * z + b) / (c * z + d),
                       params={"a": a, "b": b, "c": c, "d": d},
                       deriv=lambda z: det / (c * z + d) ** 2, self_map=True)


def example1(t: float) -> AnalyticMap:
    """gamma(e^{-t} gamma^{-1}(z)): the disc contraction w -> e^{-t} w moved to U."""
    t = _time(t)
    q = math.exp(-t)

    def func(z):
        return 1j * (z + 1j + q * (z - 1j)) / (z + 1j - q * (z - 1j))

    def deriv(z):
        # gamma'(q w) * q * (gamma^{-1})'(z)
        w = (z - 1j) / (z + 1j)
        return (2j / (1 - q * w) ** 2) * q * (2j / (z + 1j) ** 2)

    return AnalyticMap("example1", func, params={"t": t}, deriv=deriv, self_map=True)


def example2(t: float) -> AnalyticMap:
    """(z+1)^{e^{-t}} - 1."""
    t = _time(t)
    q = math.exp(-t)
    if t == 0:
        return AnalyticMap("example2", lambda z: z, params={"t": t},
                           deriv=lambda z: np.ones_like(z), self_map=True)
    return AnalyticMap(
        "example2",
        lambda z: np.exp(q * np.log(z + 1)) - 1,
        params={"t": t},
        deriv=lambda z: q * np.exp((q - 1) * np.log(z + 1)),
        self_map=True,
    )


def sqrt_parabolic(t: float) -> AnalyticMap:
    """(z^2 - t)^{1/2} on the branch with values in U, written as i*sqrt(t - z^2)."""
    t = _time(t)
    return AnalyticMap(
        "sqrt_parabolic",
        lambda z: 1j * np.sqrt(t - z * z),
        params={"t": t},
        deriv=lambda z: -1j * z / np.sqrt(t - z * z),
        self_map=True,
    )


CATALOG: dict[str, Callable[..., AnalyticMap]] = {
    "identity": identity,
    "dilation": dilation,
    "translation": translation,
    "mobius": mobius,
    "example1": example1,
    "example2": example2,
    "sqrt_parabolic": sqrt_parabolic,
}


def catalog_lookup(name: str, params: Mapping[str, complex] | None = None) -> AnalyticMap:
    """Build a catalog map by name, e.g. ``catalog_lookup("dilation", {"c": 2})``."""
    try:
        builder = CATALOG[name]
    except KeyError:
        raise UnknownCatalogEntry(f"unknown map {name!r}; known: {', '.join(CATALOG)}") from None
    params = dict(params or {})
    try:
        return builder(**params)
    except TypeError as exc:
        raise ParamError(f"bad parameters for {name}: {exc}") from None


def _real(v, label):
    v = complex(v)
    if v.imag != 0 or not math.isfinite(v.real):
        raise ParamError(f"parameter {label} must be a finite real number")
    return v.real


def _time(t):
    t = _real(t, "t")
    if t < 0:
        raise ParamError("time parameter must be >= 0")
    return t
