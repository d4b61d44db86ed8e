"""Geometry of the upper half-plane.

The moduli parameter of a marked flat torus lives in H = {z : Im z > 0},
carrying the Poincare metric ds^2 = (dx^2 + dy^2)/y^2.  This module provides
the distance, the SL(2) Mobius action, geodesic interpolation, and reduction
into the standard fundamental domain {|Re z| <= 1/2, |z| >= 1} of the
integral Mobius group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HPoint",
    "IntMatrix2",
    "as_hpoint",
    "poincare_distance",
    "mobius_apply",
    "reduce_to_fundamental_domain",
    "geodesic_point",
    "geodesic_path",
]

# Non-integer matrices fed to the Mobius action must be unimodular to this
# tolerance; integer matrices are checked exactly.
MOBIUS_DET_TOL = 1e-12

_REDUCE_MAX_ITER = 10_000


@dataclass(frozen=True)
class HPoint:
    """A point re + im*i of the upper half-plane.  im must be > 0 and finite."""

    re: float
    im: float

    def __post_init__(self):
        re, im = float(self.re), float(self.im)
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError(f"half-plane point needs finite coordinates, got ({self.re!r}, {self.im!r})")
        if im <= 0.0:
            raise ValueError(f"half-plane point needs Im > 0, got {self.im!r}")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def from_complex(cls, z) -> "HPoint":
        z = complex(z)
        return cls(z.real, z.imag)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)


def as_hpoint(value) -> HPoint:
    """Coerce an HPoint or a complex number with positive imaginary part."""
    if isinstance(value, HPoint):
        return value
    return HPoint.from_complex(value)


@dataclass(frozen=True)
class IntMatrix2:
    """Integer matrix [[a, b], [c, d]] with determinant exactly one."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            iv = int(v)
            if iv != v:
                raise ValueError(f"entry {name}={v!r} is not an integer")
            object.__setattr__(self, name, iv)
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant must be exactly 1, got {self.a * self.d - self.b * self.c}")

    @classmethod
    def identity(cls) -> "IntMatrix2":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "IntMatrix2":
        return IntMatrix2(self.d, -self.b, -self.c, self.a)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]


# Generators used by the reduction: T^k translates by k, S inverts.
_S = IntMatrix2(0, -1, 1, 0)


def _translation(k: int) -> IntMatrix2:
    return IntMatrix2(1, k, 0, 1)


def poincare_distance(z1, z2) -> float:
    """Hyperbolic distance log((a + b)/(a - b)), a = |z1 - conj(z2)|, b = |z1 - z2|.

    Evaluated as 2*log(a + b) - log(4*y1*y2), which is the same quantity by
    a^2 - b^2 = 4*y1*y2 but has no cancellation for distant points.
    """
    p, q = as_hpoint(z1), as_hpoint(z2)
    if p == q:
        return 0.0
    a = math.hypot(p.re - q.re, p.im + q.im)
    b = math.hypot(p.re - q.re, p.im - q.im)
    return 2.0 * math.log(a + b) - math.log(4.0 * p.im * q.im)


def _matrix_entries(M):
    """Unpack a 2x2 matrix argument; returns (a, b, c, d, exactly_unimodular)."""
    if isinstance(M, IntMatrix2):
        return float(M.a), float(M.b), float(M.c), float(M.d), True
    arr = np.asarray(M, dtype=float)
    if arr.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {arr.shape}")
    return float(arr[0, 0]), float(arr[0, 1]), float(arr[1, 0]), float(arr[1, 1]), False


def mobius_apply(M, z) -> HPoint:
    """Apply the fractional-linear map z -> (az + b)/(cz + d).

    M is an IntMatrix2 (checked exactly) or any real 2x2 with det = 1 to
    MOBIUS_DET_TOL.  Left action: mobius_apply(M @ N, z) agrees with applying
    N first, then M.
    """
    a, b, c, d, exact = _matrix_entries(M)
    det = a * d - b * c
    if not exact and abs(det - 1.0) > MOBIUS_DET_TOL:
        raise ValueError(f"matrix is not unimodular: det = {det!r}")
    p = as_hpoint(z)
    x, y = p.re, p.im
    u = c * x + d
    v = c * y
    denom = u * u + v * v
    # (az + b) * conj(cz + d) / |cz + d|^2; the imaginary part is y*det/denom,
    # positive by construction, so the result never leaves the half-plane.
    re = ((a * x + b) * u + a * y * v) / denom
    im = y * det / denom
    return HPoint(re, im)


def reduce_to_fundamental_domain(z, max_iter: int = _REDUCE_MAX_ITER):
    """Translate/invert z into {|Re w| <= 1/2, |w| >= 1}.

    Returns (w, M) with M integral, det 1, and w = mobius_apply(M, z) exactly
    as computed (the loop re-applies the accumulated matrix each round, so the
    witness reproduces the returned point bit for bit).  Boundary points are
    returned as-is; no canonical boundary identification is applied.
    """
    p = as_hpoint(z)
    M = IntMatrix2.identity()
    for _ in range(max_iter):
        w = mobius_apply(M, p)
        k = round(w.re)
        if k != 0:
            M = _translation(-k) @ M
            continue
        if w.re * w.re + w.im * w.im < 1.0:
            M = _S @ M
            continue
        return w, M
    raise RuntimeError(f"fundamental-domain reduction did not settle in {max_iter} iterations")


def _geodesic_feet(p: HPoint, q: HPoint):
    """Real endpoints (lo, hi) of the geodesic circle through p and q.

    Returns None when the geodesic is the vertical line Re = const.  The feet
    are the roots of t^2 - s*t + m with s = lo + hi, m = lo*hi; the
    discriminant equals (s - 2*x1)^2 + 4*y1^2 exactly, so it is evaluated
    cancellation-free, and the smaller-magnitude root comes from m divided by
    the larger one.
    """
    if p.re == q.re:
        return None
    p2 = p.re * p.re + p.im * p.im
    q2 = q.re * q.re + q.im * q.im
    s = (p2 - q2) / (p.re - q.re)
    m = s * p.re - p2
    h = math.hypot(s - 2.0 * p.re, 2.0 * p.im)  # hi - lo
    r1 = 0.5 * (s + math.copysign(h, s))
    r2 = m / r1
    return (r1, r2) if r1 < r2 else (r2, r1)


def geodesic_path(z1, z2, ts) -> np.ndarray:
    """Points of the geodesic from z1 (t=0) to z2 (t=1) at parameters ts.

    The parametrization is proportional to arc length.  Endpoints are returned
    exactly at t = 0 and t = 1.
    """
    p, q = as_hpoint(z1), as_hpoint(z2)
    ts = np.asarray(ts, dtype=float)
    if p == q:
        return np.full(ts.shape, p.z, dtype=complex)
    feet = _geodesic_feet(p, q)
    if feet is None:
        pts = p.re + 1j * (p.im * (q.im / p.im) ** ts)
    else:
        lo, hi = feet
        # Mobius map w = (z - lo)/(hi - z) sends the geodesic to the positive
        # imaginary axis, where interpolation is a geometric mean.
        v1 = math.hypot(p.re - lo, p.im) / math.hypot(p.re - hi, p.im)
        v2 = math.hypot(q.re - lo, q.im) / math.hypot(q.re - hi, q.im)
        v = np.exp((1.0 - ts) * math.log(v1) + ts * math.log(v2))
        vv = v * v
        pts = ((lo + vv * hi) + 1j * (v * (hi - lo))) / (1.0 + vv)
    pts = np.where(ts == 0.0, p.z, pts)
    pts = np.where(ts == 1.0, q.z, pts)
    return pts


def geodesic_point(z1, z2, t: float) -> HPoint:
    """The point a fraction t of the way from z1 to z2 along their geodesic.

    Requires 0 <= t <= 1, and z1 != z2 unless t is an endpoint value.
    """
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"geodesic parameter must lie in [0, 1], got {t!r}")
    p, q = as_hpoint(z1), as_hpoint(z2)
    if t == 0.0:
        return p
    if t == 1.0:
        return q
    if p == q:
        raise ValueError("geodesic endpoints coincide; interior parameters are undefined")
    w = complex(geodesic_path(p, q, np.array(t)))
    return HPoint(w.real, w.imag)
