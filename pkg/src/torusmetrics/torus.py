"""Marked flat tori as lattice quotients C/(Z*omega1 + Z*omega2).

A marking is a choice of ordered lattice basis; the modulus tau = omega2/omega1
lives in the upper half-plane.  Two normalizations are supported:

  unit area       omega1 = 1/sqrt(Im tau), omega2 = tau/sqrt(Im tau)
  unit generator  omega1 = 1,              omega2 = tau

Closed curves up to free homotopy are integer classes m*[omega1] + n*[omega2];
their geodesic representatives are straight, of length |m*omega1 + n*omega2|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .halfplane import HPoint, as_hpoint

__all__ = [
    "Normalization",
    "CurveClass",
    "MarkedTorus",
    "make_torus",
    "curve_length",
    "quotient_norm",
    "torus_distance",
    "systole",
    "primitive_pairs",
]

# Translate block scanned after rounding reduction, in each basis direction.
_BLOCK_RADIUS = 2


class Normalization(Enum):
    UNIT_AREA = "unit-area"
    UNIT_GENERATOR = "unit-generator"


@dataclass(frozen=True)
class CurveClass:
    """The free homotopy class m*[omega1] + n*[omega2], stored primitively.

    Non-primitive input (k*m, k*n) is reduced to its primitive part with the
    factor k folded into `multiplicity`: such a class is the k-fold iterate
    and its geodesic length is k times the primitive length.
    """

    m: int
    n: int
    multiplicity: int = 1

    def __post_init__(self):
        m, n, mult = self.m, self.n, self.multiplicity
        for name, v in (("m", m), ("n", n), ("multiplicity", mult)):
            if int(v) != v:
                raise ValueError(f"curve class entry {name}={v!r} is not an integer")
        m, n, mult = int(m), int(n), int(mult)
        if m == 0 and n == 0:
            raise ValueError("curve class (0, 0) is not an essential curve")
        if mult < 1:
            raise ValueError(f"multiplicity must be >= 1, got {mult}")
        g = math.gcd(abs(m), abs(n))
        if g > 1:
            m //= g
            n //= g
            mult *= g
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "multiplicity", mult)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.m, self.n)


@dataclass(frozen=True)
class MarkedTorus:
    """A marked flat torus; the basis is derived from tau and the normalization."""

    tau: HPoint
    normalization: Normalization = Normalization.UNIT_AREA
    omega1: complex = field(init=False)
    omega2: complex = field(init=False)

    def __post_init__(self):
        tau = as_hpoint(self.tau)
        object.__setattr__(self, "tau", tau)
        if self.normalization is Normalization.UNIT_AREA:
            s = 1.0 / math.sqrt(tau.im)
            w1 = complex(s, 0.0)
            w2 = tau.z * s
        elif self.normalization is Normalization.UNIT_GENERATOR:
            w1 = complex(1.0, 0.0)
            w2 = tau.z
        else:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)

    @property
    def area(self) -> float:
        return abs((self.omega1.conjugate() * self.omega2).imag)


def make_torus(tau, normalization: Normalization = Normalization.UNIT_AREA) -> MarkedTorus:
    return MarkedTorus(as_hpoint(tau), normalization)


def _as_curve_class(c) -> CurveClass:
    if isinstance(c, CurveClass):
        return c
    m, n = c
    return CurveClass(m, n)


def curve_length(T: MarkedTorus, c) -> float:
    """Length of the geodesic representative of c, |m*omega1 + n*omega2|.

    Accepts a CurveClass or a bare (m, n) pair.  Iterates (multiplicity > 1)
    count their full length.
    """
    cc = _as_curve_class(c)
    return cc.multiplicity * abs(cc.m * T.omega1 + cc.n * T.omega2)


@lru_cache(maxsize=256)
def _lagrange_reduced(w1: complex, w2: complex) -> tuple[complex, complex]:
    """Shortest basis of the lattice Z*w1 + Z*w2 (Lagrange/Gauss reduction)."""
    u, v = w1, w2
    for _ in range(10_000):
        if v.real * v.real + v.imag * v.imag < u.real * u.real + u.imag * u.imag:
            u, v = v, u
        k = round((v.real * u.real + v.imag * u.imag) / (u.real * u.real + u.imag * u.imag))
        if k == 0:
            return u, v
        v = v - k * u
    raise RuntimeError("lattice basis reduction did not terminate")


def quotient_norm(T: MarkedTorus, w):
    """Distance from w to the lattice of T, i.e. min over lambda of |w - lambda|.

    Accepts a complex scalar or ndarray.  The basis is Lagrange-reduced first,
    after which rounding reduction plus a (2*_BLOCK_RADIUS+1)^2 translate scan
    is exact for every lattice.
    """
    u, v = _lagrange_reduced(T.omega1, T.omega2)
    arr = np.asarray(w, dtype=complex)
    scalar = arr.ndim == 0
    flat = arr.reshape(-1)
    det = u.real * v.imag - u.imag * v.real
    a = (flat.real * v.imag - flat.imag * v.real) / det
    b = (u.real * flat.imag - u.imag * flat.real) / det
    a = a - np.round(a)
    b = b - np.round(b)
    rx = a * u.real + b * v.real
    ry = a * u.imag + b * v.imag
    best = rx * rx + ry * ry
    for k in range(-_BLOCK_RADIUS, _BLOCK_RADIUS + 1):
        for l in range(-_BLOCK_RADIUS, _BLOCK_RADIUS + 1):
            if k == 0 and l == 0:
                continue
            ox = k * u.real + l * v.real
            oy = k * u.imag + l * v.imag
            cand = (rx + ox) ** 2 + (ry + oy) ** 2
            np.minimum(best, cand, out=best)
    d = np.sqrt(best)
    if scalar:
        return float(d[0])
    return d.reshape(arr.shape)


def torus_distance(T: MarkedTorus, x, y) -> float:
    """Flat quotient distance between the points x, y of C/Lambda."""
    return quotient_norm(T, complex(x) - complex(y))


@lru_cache(maxsize=32)
def primitive_pairs(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical primitive classes with max(|m|, |n|) <= N.

    One representative per +- pair: m >= 1 with any n, plus (0, 1).
    """
    if N < 1:
        raise ValueError(f"enumeration bound must be >= 1, got {N}")
    ms = np.arange(0, N + 1, dtype=np.int64)
    ns = np.arange(-N, N + 1, dtype=np.int64)
    M, Nn = np.meshgrid(ms, ns, indexing="ij")
    keep = ((M > 0) | ((M == 0) & (Nn == 1))) & (np.gcd(M, np.abs(Nn)) == 1)
    return M[keep], Nn[keep]


def _tie_break_index(ms: np.ndarray, ns: np.ndarray, candidates: np.ndarray) -> int:
    """Pick among candidate indices: smallest |m|+|n|, then larger m, then larger n."""
    size = np.abs(ms[candidates]) + np.abs(ns[candidates])
    order = np.lexsort((-ns[candidates], -ms[candidates], size))
    return int(candidates[order[0]])


def systole(T: MarkedTorus) -> tuple[CurveClass, float]:
    """Shortest essential closed geodesic: (class, length).

    Enumerates primitive classes in a box large enough that any vector shorter
    than the initially observed one must lie inside it (coefficient bound
    |m| <= l0 * max|omega| / area, combined with max|omega|/l0, plus margin).
    """
    w1, w2 = T.omega1, T.omega2
    l0 = min(abs(w1), abs(w2))
    top = max(abs(w1), abs(w2))
    area = T.area
    N = math.ceil(max(top / l0, l0 * top / area)) + 2
    ms, ns = primitive_pairs(N)
    lengths = np.abs(ms * w1 + ns * w2)
    lmin = lengths.min()
    ties = np.flatnonzero(lengths == lmin)
    i = _tie_break_index(ms, ns, ties)
    return CurveClass(int(ms[i]), int(ns[i])), float(lmin)
