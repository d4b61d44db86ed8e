"""A two-parameter family of piecewise-affine extremal Lipschitz maps.

Each member stretches the unit square horizontally by r and compresses it
vertically in two bands, splitting at the seam y = 1/2 - eps:

    y <= 1/2 - eps:  (x, y) -> (r*x, (1/r - delta)/(1/2 - eps) * y)
    y >= 1/2 - eps:  (x, y) -> (r*x, (1/r - delta) + delta*(y - (1/2 - eps))/(1/2 + eps))

sending the unit-square torus to the r x 1/r rectangle torus.  For every
valid (eps, delta) the Lipschitz constant is exactly r, while the
quasiconformal distortion exceeds r^2 unless the two bands have equal
vertical compression 1/r, in which case the map collapses to the affine one.
That happens exactly along delta = (1/2 + eps)/r, the affine curve through
(eps, delta) = (0, 1/(2r)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .halfplane import HPoint
from .oracle import SamplingConfig, sampled_lipschitz
from .torus import make_torus

__all__ = [
    "PiecewiseStretchMap",
    "validate_params",
    "evaluate",
    "family_lipschitz_constant",
    "family_qc_distortion",
    "sampled_family_lipschitz",
]


def validate_params(r: float, eps: float, delta: float) -> tuple[bool, str | None]:
    """Check r > 1, |eps| < 1/2, and the double inequality

        max(0, 1/r - r/2 + eps*r) < delta < min(1/r, r/2 + eps*r).

    Returns (True, None) or (False, reason) naming the violated constraint.
    """
    r, eps, delta = float(r), float(eps), float(delta)
    if not (math.isfinite(r) and math.isfinite(eps) and math.isfinite(delta)):
        return False, "parameters must be finite"
    if r <= 1.0:
        return False, f"r must be > 1, got {r!r}"
    if not (-0.5 < eps < 0.5):
        return False, f"eps must lie in (-1/2, 1/2), got {eps!r}"
    lo = max(0.0, 1.0 / r - 0.5 * r + eps * r)
    hi = min(1.0 / r, 0.5 * r + eps * r)
    if not delta > lo:
        return False, f"delta must be > max(0, 1/r - r/2 + eps*r) = {lo!r}, got {delta!r}"
    if not delta < hi:
        return False, f"delta must be < min(1/r, r/2 + eps*r) = {hi!r}, got {delta!r}"
    return True, None


@dataclass(frozen=True)
class PiecewiseStretchMap:
    """One member of the family; construction rejects invalid parameters."""

    r: float
    eps: float
    delta: float

    def __post_init__(self):
        ok, reason = validate_params(self.r, self.eps, self.delta)
        if not ok:
            raise ValueError(reason)
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "eps", float(self.eps))
        object.__setattr__(self, "delta", float(self.delta))

    @property
    def seam(self) -> float:
        return 0.5 - self.eps

    @property
    def bottom_stretch(self) -> float:
        """Vertical factor of the lower band, (1/r - delta)/(1/2 - eps)."""
        return (1.0 / self.r - self.delta) / (0.5 - self.eps)

    @property
    def top_stretch(self) -> float:
        """Vertical factor of the upper band, delta/(1/2 + eps)."""
        return self.delta / (0.5 + self.eps)

    def is_affine(self, tol: float = 1e-15) -> bool:
        """True when both bands compress by 1/r, i.e. delta = (1/2 + eps)/r."""
        return abs(self.delta * self.r - (0.5 + self.eps)) <= tol

    def evaluate(self, p):
        return evaluate(self, p)


def evaluate(F: PiecewiseStretchMap, p):
    """Image of a point of the closed unit square [0, 1]^2 (as x + iy).

    Accepts a complex scalar or ndarray; the seam y = 1/2 - eps is assigned
    to the lower band (both bands agree there).
    """
    arr = np.asarray(p, dtype=complex)
    scalar = arr.ndim == 0
    x, y = arr.real, arr.imag
    if np.any((x < 0.0) | (x > 1.0) | (y < 0.0) | (y > 1.0)):
        raise ValueError("point lies outside the closed unit square")
    base = 1.0 / F.r - F.delta
    fy = np.where(y <= F.seam, F.bottom_stretch * y, base + F.top_stretch * (y - F.seam))
    out = F.r * x + 1j * fy
    if scalar:
        return complex(out)
    return out


def family_lipschitz_constant(F: PiecewiseStretchMap) -> float:
    """Largest diagonal entry of the two band derivatives; equals r whenever
    the parameters are valid."""
    return max(F.r, F.bottom_stretch, F.top_stretch)


def family_qc_distortion(F: PiecewiseStretchMap) -> float:
    """Worst band distortion max(r/bottom, r/top); r^2 exactly on the affine
    curve delta = (1/2 + eps)/r and strictly larger everywhere else."""
    return max(F.r / F.bottom_stretch, F.r / F.top_stretch)


def sampled_family_lipschitz(F: PiecewiseStretchMap, grid_n: int) -> float:
    """Grid-sampled lower bound for the Lipschitz constant of the induced map
    from the unit-square torus to the r x 1/r rectangle torus."""
    T1 = make_torus(HPoint(0.0, 1.0))
    T2 = make_torus(HPoint(0.0, 1.0 / (F.r * F.r)))
    return sampled_lipschitz(F.evaluate, T1, T2, SamplingConfig(grid_n=grid_n))
