"""Sampling oracles, independent of the closed forms they are used to check.

Everything here is a lower bound (suprema sampled over finite sets) or a
convergent quadrature; nothing calls the singular-value or distance formulas
it is meant to validate.  Results are deterministic for a fixed config.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .halfplane import as_hpoint, geodesic_path
from .torus import MarkedTorus, quotient_norm

__all__ = [
    "SamplingConfig",
    "sampled_lipschitz",
    "direction_sampled_norm",
    "hyperbolic_path_length",
]

# All grid pairs are evaluated up to this grid size; above it, a seeded random
# subset of _RANDOM_PAIR_COUNT ordered pairs is used instead.
EXHAUSTIVE_GRID_LIMIT = 60
_RANDOM_PAIR_COUNT = 1_000_000

_PAIR_CHUNK = 200_000
_BOUNDARY_SAMPLES = 17
_BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class SamplingConfig:
    grid_n: int = 50
    direction_samples: int = 20_000
    path_samples: int = 2_000
    seed: int = 0

    def __post_init__(self):
        if self.grid_n < 2:
            raise ValueError(f"grid_n must be >= 2, got {self.grid_n}")
        if self.direction_samples < 4:
            raise ValueError(f"direction_samples must be >= 4, got {self.direction_samples}")
        if self.path_samples < 2:
            raise ValueError(f"path_samples must be >= 2, got {self.path_samples}")


def _apply_pointwise(fn, arr: np.ndarray) -> np.ndarray:
    """Apply fn to a complex array, falling back to a scalar loop."""
    try:
        out = np.asarray(fn(arr))
        if out.shape == arr.shape:
            return out
    except Exception:
        pass
    return np.array([fn(z) for z in arr.reshape(-1)]).reshape(arr.shape)


def _check_lattice_compatibility(map_fn, T1: MarkedTorus, T2: MarkedTorus):
    """Reject maps that do not respect the side identifications of T1's cell."""
    t = np.linspace(0.0, 1.0, _BOUNDARY_SAMPLES)
    w1, w2 = T1.omega1, T1.omega2
    for lo, hi in ((t * w1, t * w1 + w2), (t * w2, t * w2 + w1)):
        gap = quotient_norm(T2, _apply_pointwise(map_fn, hi) - _apply_pointwise(map_fn, lo))
        if np.max(gap) > _BOUNDARY_TOL * max(1.0, abs(T2.omega1), abs(T2.omega2)):
            raise ValueError("map is not compatible with the lattice identifications")


def sampled_lipschitz(map_fn, T1: MarkedTorus, T2: MarkedTorus, config: SamplingConfig) -> float:
    """Largest sampled ratio torus_distance(T2, f(p), f(q)) / torus_distance(T1, p, q).

    The fundamental cell of T1 is sampled on a grid_n x grid_n lattice of
    basis fractions; f must send that cell into a fundamental cell of T2
    compatibly with the identifications.  This is a lower bound for the
    Lipschitz constant of the induced torus map.
    """
    n = config.grid_n
    fr = np.arange(n, dtype=float) / n
    a, b = np.meshgrid(fr, fr, indexing="ij")
    pts = (a * T1.omega1 + b * T1.omega2).reshape(-1)
    _check_lattice_compatibility(map_fn, T1, T2)
    images = _apply_pointwise(map_fn, pts).astype(complex)

    m = pts.size
    best = 0.0
    if n <= EXHAUSTIVE_GRID_LIMIT:
        for start in range(0, m, max(1, _PAIR_CHUNK // m)):
            stop = min(m, start + max(1, _PAIR_CHUNK // m))
            d1 = quotient_norm(T1, pts[start:stop, None] - pts[None, :])
            d2 = quotient_norm(T2, images[start:stop, None] - images[None, :])
            mask = d1 > 0.0
            if np.any(mask):
                best = max(best, float(np.max(d2[mask] / d1[mask])))
    else:
        rng = np.random.default_rng(config.seed)
        remaining = _RANDOM_PAIR_COUNT
        while remaining > 0:
            take = min(remaining, _PAIR_CHUNK)
            remaining -= take
            i = rng.integers(0, m, size=take)
            j = rng.integers(0, m, size=take)
            d1 = quotient_norm(T1, pts[i] - pts[j])
            d2 = quotient_norm(T2, images[i] - images[j])
            mask = d1 > 0.0
            if np.any(mask):
                best = max(best, float(np.max(d2[mask] / d1[mask])))
    return best


def direction_sampled_norm(M, config: SamplingConfig) -> float:
    """max |M u| over direction_samples unit vectors u; a lower bound for the
    operator norm with error O(samples^-2)."""
    k = config.direction_samples
    theta = np.arange(k) * (math.pi / k)
    u = np.exp(1j * theta)
    return float(np.max(np.abs(M(u))))


def hyperbolic_path_length(z1, z2, weight, config: SamplingConfig) -> float:
    """Length of the z1 -> z2 geodesic under ds = sqrt(weight(z)) |dz|.

    Composite trapezoid over path_samples segments of the polyline through
    geodesic sample points; weight is the conformal metric tensor, e.g.
    z -> 1/Im(z)^2 for the Poincare metric.
    """
    p, q = as_hpoint(z1), as_hpoint(z2)
    ts = np.linspace(0.0, 1.0, config.path_samples + 1)
    pts = geodesic_path(p, q, ts)
    dens = np.sqrt(_apply_pointwise(weight, pts).astype(float))
    seg = np.abs(np.diff(pts))
    return float(np.sum(seg * 0.5 * (dens[:-1] + dens[1:])))
