"""Adaptive Gauss-Legendre panel quadrature on the real line with power-law tails.

Integrands are vectorised callables of a real array ``x`` returning real or
complex values of the same shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DivergentIntegral, QuadratureError

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(16)

PANEL_RTOL = 1e-11
MAX_DEPTH = 60
MAX_PANELS = 100_000

X_START = 64.0
X_MIN_VERDICT = 1024.0
X_CAP = 1e8
TAIL_RTOL = 1e-6
ALPHA_FLOOR = 1.0 + 1e-3
SHELL_ATOL = 1e-14


def _rule(fun, a, b):
    half = 0.5 * (b - a)
    x = 0.5 * (a + b)[:, None] + half[:, None] * _NODES
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        vals = fun(x)
    if not np.all(np.isfinite(vals)):
        raise DivergentIntegral("integrand is not finite on the line", alpha=-math.inf)
    return half * (vals @ _WEIGHTS)


def integrate_panels(fun, edges, rtol: float = PANEL_RTOL, atol: float = 0.0):
    """Integral of ``fun`` over ``[edges[0], edges[-1]]``.

    Each panel is compared against its two halves; panels that disagree by
    more than ``rtol`` of their value (or ``atol``, at least 1e-14 of the whole
    integral) are bisected, up to ``MAX_DEPTH`` levels.
    """
    edges = np.asarray(edges, dtype=float)
    a, b = edges[:-1], edges[1:]
    whole = _rule(fun, a, b)
    atol = max(atol, 1e-14 * float(np.sum(np.abs(whole))))
    total = 0.0
    for _ in range(MAX_DEPTH):
        mid = 0.5 * (a + b)
        left, right = _rule(fun, a, mid), _rule(fun, mid, b)
        refined = left + right
        ok = np.abs(refined - whole) <= np.maximum(rtol * np.abs(refined), atol)
        total = total + refined[ok].sum()
        if ok.all():
            return total
        bad = ~ok
        a = np.concatenate([a[bad], mid[bad]])
        b = np.concatenate([mid[bad], b[bad]])
        whole = np.concatenate([left[bad], right[bad]])
        if a.size > MAX_PANELS:
            break
    raise QuadratureError(f"panel refinement stalled with {a.size} open panels")


@dataclass(frozen=True)
class LineIntegral:
    """Result of integrating over the whole real line.

    ``tail`` is the power-law extrapolation beyond ``[-x_max, x_max]`` and
    ``tail_bound`` the spread between two independent exponent fits.
    """

    bulk: complex
    tail: complex
    tail_bound: float
    alpha: float
    x_max: float

    @property
    def value(self):
        return self.bulk + self.tail


def _side_tail(fun, x, sign):
    pts = sign * np.array([x / 4, x / 2, x])
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        g4, g2, g1 = fun(pts)
    if not np.all(np.isfinite([g4, g2, g1])):
        return 0.0, math.inf, -math.inf
    m4, m2, m1 = abs(g4), abs(g2), abs(g1)
    if m1 == 0.0:
        return 0.0, 0.0, math.inf
    alpha = math.log2(m2 / m1) if m2 > 0 else -math.inf
    if alpha <= 1.0:
        return math.inf, math.inf, alpha
    tail = g1 * x / (alpha - 1)
    alpha_prev = math.log2(m4 / m2) if m4 > 0 and m2 > 0 else -math.inf
    if alpha_prev <= 1.0:
        return tail, abs(tail), alpha
    return tail, abs(tail - g1 * x / (alpha_prev - 1)), alpha


def integrate_line(fun, x_start: float = X_START, x_cap: float = X_CAP,
                   tail_rtol: float = TAIL_RTOL) -> LineIntegral:
    """Integral of ``fun`` over the real line.

    The bulk ``[-X, X]`` grows by doubling until the fitted tail
    ``C X^{1-alpha}/(alpha-1)`` per side is below ``tail_rtol`` of the bulk or
    ``X`` reaches ``x_cap``.  A decay exponent ``alpha <= 1 + 1e-3`` (seen at
    ``X >= 1024`` or at the cap) raises :class:`DivergentIntegral`.
    """
    k = int(round(math.log2(x_start)))
    edges = np.concatenate([-(2.0 ** np.arange(k, -1, -1)), [0.0], 2.0 ** np.arange(0, k + 1)])
    bulk = integrate_panels(fun, edges)
    x = 2.0 ** k
    while True:
        sides = [_side_tail(fun, x, s) for s in (-1.0, 1.0)]
        alpha = min(s[2] for s in sides)
        at_cap = 2 * x > x_cap
        if alpha <= ALPHA_FLOOR and (x >= X_MIN_VERDICT or alpha == -math.inf or at_cap):
            raise DivergentIntegral(f"integrand decays like |x|^-{alpha:.4g} at |x| = {x:.3g}",
                                    alpha=alpha)
        tail = sides[0][0] + sides[1][0]
        bound = sides[0][1] + sides[1][1]
        small = abs(tail) <= tail_rtol * abs(bulk)
        if (x >= X_MIN_VERDICT and small) or at_cap:
            return LineIntegral(bulk, tail, float(bound), float(alpha), x)
        # outer shells only need accuracy relative to the running total
        floor = SHELL_ATOL * abs(bulk)
        bulk = (bulk + integrate_panels(fun, [-2 * x, -x], atol=floor)
                + integrate_panels(fun, [x, 2 * x], atol=floor))
        x *= 2
