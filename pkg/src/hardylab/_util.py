"""Small numerical helpers: array coercion, extrapolation, seeded sampling."""
from __future__ import annotations

import os

import numpy as np

SEED_ENV = "HARDYLAB_SEED"


def as_complex(z):
    return np.asarray(z, dtype=complex)


def out(value, like):
    """Return a Python scalar when the caller passed a scalar."""
    if np.ndim(like) == 0:
        value = np.asarray(value)
        return complex(value) if np.iscomplexobj(value) else float(value)
    return value


def seed():
    return int(os.environ.get(SEED_ENV, "0"))


def rng(offset=0):
    return np.random.default_rng(seed() + offset)


def extrapolate_to_zero(h, values):
    """Neville extrapolation of ``values(h)`` to ``h = 0``.

    Returns the full-order estimate and the estimate from one order lower
    (computed on the points closest to zero), whose difference serves as an
    error indicator. ``values`` may carry trailing array dimensions.
    """
    h = np.asarray(h, dtype=float)
    table = [np.asarray(v) for v in values]
    n = len(table)
    lower = table[-1]
    for level in range(1, n):
        if len(table) == 2:
            lower = table[1]
        table = [
            (-h[i + level] * table[i] + h[i] * table[i + 1]) / (h[i] - h[i + level])
            for i in range(n - level)
        ]
    return table[0], lower


def sample_halfplane(n, rng_=None, x_range=(-3.0, 3.0), y_range=(0.1, 3.0)):
    g = rng_ if rng_ is not None else rng()
    x = g.uniform(*x_range, size=n)
    y = g.uniform(*y_range, size=n)
    return x + 1j * y


def sample_halfplane_wide(n, rng_=None, r_range=(1e-2, 1e6)):
    """Points of U with log-uniform modulus and uniform argument in (0, pi)."""
    g = rng_ if rng_ is not None else rng()
    r = np.exp(g.uniform(np.log(r_range[0]), np.log(r_range[1]), size=n))
    theta = g.uniform(1e-6, np.pi - 1e-6, size=n)
    return r * np.exp(1j * theta)


def sample_disc(n, rng_=None, radius=0.95):
    g = rng_ if rng_ is not None else rng()
    r = radius * np.sqrt(g.uniform(0.0, 1.0, size=n))
    theta = g.uniform(0.0, 2 * np.pi, size=n)
    return r * np.exp(1j * theta)
