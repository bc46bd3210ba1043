"""Cayley transfer between U and D, Stolz-type sectors, non-tangential paths."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._util import as_complex, out
from .errors import ParamError
from .maps import AnalyticMap, Domain, check_domain

R_MIN = 10.0
R_MAX = 1e6


def _to_disc(z):
    return (z - 1j) / (z + 1j)


def _to_halfplane(w):
    return 1j * (1 + w) / (1 - w)


def to_disc(z):
    """gamma^{-1}(z) = (z - i)/(z + i)."""
    return out(_to_disc(check_domain(z, Domain.HALF_PLANE)), z)


def to_halfplane(w):
    """gamma(w) = i(1 + w)/(1 - w)."""
    return out(_to_halfplane(check_domain(w, Domain.DISC)), w)


def conjugate_map(phi: AnalyticMap) -> AnalyticMap:
    """psi = gamma^{-1} o phi o gamma as a map of D."""
    if phi.domain is not Domain.HALF_PLANE:
        raise ParamError("conjugate_map expects a map of the half-plane")

    def func(w):
        return _to_disc(phi.func(_to_halfplane(w)))

    deriv = None
    if phi.deriv is not None:
        def deriv(w):
            z = _to_halfplane(w)
            fz = phi.func(z)
            return 2j / (fz + 1j) ** 2 * phi.deriv(z) * 2j / (1 - w) ** 2

    return AnalyticMap(f"conj({phi.name})", func, domain=Domain.DISC,
                       params=dict(phi.params), deriv=deriv, self_map=phi.self_map)


class SectorKind(enum.Enum):
    HALF_PLANE_AT_INFINITY = "T"
    DISC_AT_ONE = "S"


@dataclass(frozen=True)
class Sector:
    """T_u(inf) = {x+iy in U : |x| < u y} or S_a(1) = {w in D : |w-1| < a(1-|w|)}."""

    kind: SectorKind
    opening: float

    def __post_init__(self):
        if self.kind is SectorKind.HALF_PLANE_AT_INFINITY and not self.opening > 0:
            raise ParamError("T_u needs u > 0")
        if self.kind is SectorKind.DISC_AT_ONE and not self.opening > 1:
            raise ParamError("S_a needs a > 1")

    def contains(self, point):
        return sector_contains(self, point)


def sector_contains(s: Sector, point):
    p = as_complex(point)
    if s.kind is SectorKind.HALF_PLANE_AT_INFINITY:
        inside = (p.imag > 0) & (np.abs(p.real) < s.opening * p.imag)
    else:
        mod = np.abs(p)
        inside = (mod < 1) & (np.abs(p - 1) < s.opening * (1 - mod))
    return bool(inside) if inside.ndim == 0 else inside


class Target(enum.Enum):
    INFINITY_IN_U = "infinity"
    ONE_IN_D = "one"


def ray_angle(target: Target, opening: float, tilt: float) -> float:
    """Angle from the vertical for a ray at fraction ``tilt`` of the sector half-angle."""
    if not 0 <= tilt < 1:
        raise ParamError("tilt must lie in [0, 1)")
    if target is Target.INFINITY_IN_U:
        return tilt * math.atan(opening)
    # gamma^{-1} of the ray at angle alpha approaches 1 with Stolz ratio 1/cos(alpha)
    return tilt * math.acos(1.0 / opening)


def nt_path(target: Target, opening: float, n: int, tilt: float = 0.0) -> np.ndarray:
    """``n`` points tending to the target inside the sector of the given opening.

    Radii are geometric from 10 to 1e6 along a ray tilted ``tilt`` of the way
    from the vertical to the sector edge (``tilt=0`` is the imaginary axis,
    which lies in every sector).  Disc paths are the Cayley images.
    """
    if n < 2:
        raise ParamError("nt_path needs n >= 2")
    if target is Target.INFINITY_IN_U and not opening > 0:
        raise ParamError("half-plane sectors need opening > 0")
    if target is Target.ONE_IN_D and not opening > 1:
        raise ParamError("disc sectors need opening > 1")
    alpha = ray_angle(target, opening, tilt)
    radii = np.geomspace(R_MIN, R_MAX, n)
    z = radii * (math.sin(alpha) + 1j * math.cos(alpha))
    if target is Target.INFINITY_IN_U:
        pts, sector = z, Sector(SectorKind.HALF_PLANE_AT_INFINITY, opening)
    else:
        pts, sector = _to_disc(z), Sector(SectorKind.DISC_AT_ONE, opening)
    if not np.all(sector_contains(sector, pts)):
        raise ParamError("tilted ray leaves the sector at small radius; reduce tilt")
    return pts
