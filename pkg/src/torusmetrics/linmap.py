"""Real 2x2 linear maps of the plane, viewed as maps of C.

Writing a map as g(z) = alpha*z + beta*conj(z) with

    alpha = ((a11 + a22) + i(a21 - a12))/2,
    beta  = ((a11 - a22) + i(a21 + a12))/2,

the singular values are |alpha| + |beta| and ||alpha| - |beta||, and the
quasiconformal distortion of an orientation-preserving map is
(|alpha| + |beta|)/(|alpha| - |beta|).  Both are computed from two hypots,
with no cancellation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .torus import MarkedTorus

__all__ = [
    "LinearMap2",
    "singular_values",
    "lipschitz_constant",
    "qc_distortion",
    "invert",
    "compose",
    "affine_comparison_map",
    "upper_triangular_map",
    "upper_triangular_lipschitz",
]


@dataclass(frozen=True)
class LinearMap2:
    """Invertible real matrix [[a11, a12], [a21, a22]] acting on (x, y)."""

    a11: float
    a12: float
    a21: float
    a22: float

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"matrix entry {name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        if self.det == 0.0:
            raise ValueError("matrix is singular")

    @classmethod
    def identity(cls) -> "LinearMap2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diag(cls, sx: float, sy: float) -> "LinearMap2":
        return cls(sx, 0.0, 0.0, sy)

    @property
    def det(self) -> float:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def complex_coefficients(self) -> tuple[complex, complex]:
        """(alpha, beta) with g(z) = alpha*z + beta*conj(z)."""
        alpha = complex(0.5 * (self.a11 + self.a22), 0.5 * (self.a21 - self.a12))
        beta = complex(0.5 * (self.a11 - self.a22), 0.5 * (self.a21 + self.a12))
        return alpha, beta

    def __call__(self, z):
        """Apply to a complex scalar or ndarray."""
        alpha, beta = self.complex_coefficients
        return alpha * z + beta * np.conjugate(z)

    def rows(self):
        return [[self.a11, self.a12], [self.a21, self.a22]]


def _derivative_moduli(M: LinearMap2) -> tuple[float, float]:
    alpha, beta = M.complex_coefficients
    return math.hypot(alpha.real, alpha.imag), math.hypot(beta.real, beta.imag)


def singular_values(M: LinearMap2) -> tuple[float, float]:
    """(largest, smallest) singular value."""
    p, q = _derivative_moduli(M)
    return p + q, abs(p - q)


def lipschitz_constant(M: LinearMap2) -> float:
    """Operator norm sup |Mu| over unit vectors u, i.e. the top singular value."""
    p, q = _derivative_moduli(M)
    return p + q


def qc_distortion(M: LinearMap2) -> float:
    """Quasiconformal distortion K = (|alpha| + |beta|)/(|alpha| - |beta|).

    Requires det > 0.  K >= 1, with K = 1 exactly for similarities, and
    K = L^2 for unit-determinant maps.
    """
    if M.det <= 0.0:
        raise ValueError(f"distortion needs an orientation-preserving map, det = {M.det!r}")
    p, q = _derivative_moduli(M)
    return (p + q) / (p - q)


def invert(M: LinearMap2) -> LinearMap2:
    d = M.det
    return LinearMap2(M.a22 / d, -M.a12 / d, -M.a21 / d, M.a11 / d)


def compose(M: LinearMap2, N: LinearMap2) -> LinearMap2:
    """Matrix product M*N: apply N first, then M."""
    return LinearMap2(
        M.a11 * N.a11 + M.a12 * N.a21,
        M.a11 * N.a12 + M.a12 * N.a22,
        M.a21 * N.a11 + M.a22 * N.a21,
        M.a21 * N.a12 + M.a22 * N.a22,
    )


def affine_comparison_map(T1: MarkedTorus, T2: MarkedTorus) -> LinearMap2:
    """The linear map sending the basis of T1 to the basis of T2.

    Solves A*[omega1 omega2] = [omega1' omega2'] column-wise; this is the
    unique affine map compatible with the markings.  For two unit-area tori
    the determinant is 1 up to roundoff.
    """
    if T1.normalization is not T2.normalization:
        raise ValueError("comparison map needs tori in the same normalization")
    w1, w2 = T1.omega1, T1.omega2
    z1, z2 = T2.omega1, T2.omega2
    det = w1.real * w2.imag - w1.imag * w2.real
    return LinearMap2(
        (z1.real * w2.imag - z2.real * w1.imag) / det,
        (z2.real * w1.real - z1.real * w2.real) / det,
        (z1.imag * w2.imag - z2.imag * w1.imag) / det,
        (z2.imag * w1.real - z1.imag * w2.real) / det,
    )


def upper_triangular_map(c: float, d: float) -> LinearMap2:
    """The unit-determinant triangular map (x, y) -> (x/d + c*y, d*y)."""
    d = float(d)
    if d == 0.0:
        raise ValueError("stretch factor d must be nonzero")
    return LinearMap2(1.0 / d, float(c), 0.0, d)


def upper_triangular_lipschitz(c: float, d: float) -> float:
    """Closed-form operator norm of upper_triangular_map(c, d):

        L = sqrt((d^2 + d^-2 + c^2 + sqrt((d^2 + d^-2 + c^2)^2 - 4)) / 2)

    The discriminant is evaluated in the factored form
    ((d - 1/d)^2 + c^2) * ((d + 1/d)^2 + c^2), which is the same polynomial
    but does not cancel near d = 1, c = 0.
    """
    c, d = float(c), float(d)
    if d == 0.0:
        raise ValueError("stretch factor d must be nonzero")
    e = 1.0 / d
    t = d * d + e * e + c * c
    disc = ((d - e) ** 2 + c * c) * ((d + e) ** 2 + c * c)
    return math.sqrt(0.5 * (t + math.sqrt(disc)))
