"""Distances between marked flat tori, parametrized by the half-plane.

For moduli t1, t2 the comparison map between the unit-area tori is affine;
its operator norm L and distortion K = L^2 give

    lambda = log L           (least Lipschitz constant)
    teich  = (1/2) log K     (Teichmuller distance)

and both equal half the Poincare distance.  The curve-ratio metrics are
suprema of geodesic-length ratios over homotopy classes, enumerated up to a
box bound N:

    kappa        unit-area lengths   (symmetric, equals lambda in the limit)
    kappa_prime  unit-generator lengths (asymmetric)

The Sorvali dilatation is the larger of the two kappa_prime directions; the
symmetrized average s_kappa_prime recovers the Teichmuller distance.  The
Weil-Petersson tensor on this moduli space is |dtau|^2 / (2 Im(tau)^2), half
the hyperbolic tensor, so wp distances are Poincare distances over sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .halfplane import HPoint, as_hpoint, poincare_distance
from .linmap import affine_comparison_map, lipschitz_constant, qc_distortion
from .torus import (
    CurveClass,
    MarkedTorus,
    Normalization,
    _tie_break_index,
    make_torus,
    primitive_pairs,
)

__all__ = [
    "KappaResult",
    "MetricReport",
    "lambda_metric",
    "teichmuller_metric",
    "kappa_metric",
    "kappa_prime",
    "sorvali_dilatation",
    "s_kappa_prime",
    "wp_tensor",
    "wp_distance",
    "max_stretch_ratio",
    "full_report",
    "sorvali_inequality_report",
]

DEFAULT_ENUMERATION_BOUND = 500

# Closed-form identities hold to EXACT_TOL; enumerated quantities approach
# their limits and are validated to ENUM_TOL at the default bound.
EXACT_TOL = 1e-12
ENUM_TOL = 1e-6


def lambda_metric(t1, t2) -> float:
    """log of the least Lipschitz constant among marked maps T(t1) -> T(t2)."""
    p, q = as_hpoint(t1), as_hpoint(t2)
    if p == q:
        return 0.0
    A = affine_comparison_map(make_torus(p), make_torus(q))
    return math.log(lipschitz_constant(A))


def teichmuller_metric(t1, t2) -> float:
    """(1/2) log of the least quasiconformal distortion; equals lambda_metric."""
    p, q = as_hpoint(t1), as_hpoint(t2)
    if p == q:
        return 0.0
    A = affine_comparison_map(make_torus(p), make_torus(q))
    return 0.5 * math.log(qc_distortion(A))


def max_stretch_ratio(T1: MarkedTorus, T2: MarkedTorus, N: int) -> tuple[float, CurveClass]:
    """Largest curve-length ratio l_{T2}/l_{T1} over primitive classes with
    max(|m|, |n|) <= N, with its maximizing class.

    Ties prefer smaller |m| + |n|, then larger m, then larger n.  Partitions
    of the enumeration box combine by max, so the result is independent of
    evaluation order.
    """
    ms, ns = primitive_pairs(N)
    den = np.abs(ms * T1.omega1 + ns * T1.omega2)
    num = np.abs(ms * T2.omega1 + ns * T2.omega2)
    ratios = num / den
    rmax = float(ratios.max())
    ties = np.flatnonzero(ratios == rmax)
    i = _tie_break_index(ms, ns, ties)
    return rmax, CurveClass(int(ms[i]), int(ns[i]))


class KappaResult(NamedTuple):
    value: float
    witness: CurveClass
    gap: float


def kappa_metric(t1, t2, N: int = DEFAULT_ENUMERATION_BOUND) -> KappaResult:
    """Curve-ratio metric on unit-area tori, enumerated up to N.

    Returns (value, witness, gap) with gap = lambda_metric - value >= 0.
    The supremum is attained only when the maximal stretch direction is
    rational; otherwise it is approached along convergents and the gap stays
    positive at every finite N.
    """
    p, q = as_hpoint(t1), as_hpoint(t2)
    rmax, witness = max_stretch_ratio(make_torus(p), make_torus(q), N)
    value = math.log(rmax)
    return KappaResult(value, witness, lambda_metric(p, q) - value)


def kappa_prime(t1, t2, N: int = DEFAULT_ENUMERATION_BOUND) -> float:
    """Asymmetric curve-ratio metric on unit-generator tori, enumerated up to N."""
    p, q = as_hpoint(t1), as_hpoint(t2)
    rmax, _ = max_stretch_ratio(
        make_torus(p, Normalization.UNIT_GENERATOR),
        make_torus(q, Normalization.UNIT_GENERATOR),
        N,
    )
    return math.log(rmax)


def sorvali_dilatation(t1, t2, N: int = DEFAULT_ENUMERATION_BOUND) -> float:
    """max of the two kappa_prime directions."""
    return max(kappa_prime(t1, t2, N), kappa_prime(t2, t1, N))


def s_kappa_prime(t1, t2, N: int = DEFAULT_ENUMERATION_BOUND) -> float:
    """Symmetrized average of the two kappa_prime directions; converges to the
    Teichmuller distance as N grows."""
    return 0.5 * (kappa_prime(t1, t2, N) + kappa_prime(t2, t1, N))


def wp_tensor(t) -> float:
    """Weil-Petersson metric tensor at t: ds^2 = wp_tensor(t) |dt|^2."""
    p = as_hpoint(t)
    return 1.0 / (2.0 * p.im * p.im)


def wp_distance(t1, t2) -> float:
    """Weil-Petersson distance, poincare_distance / sqrt(2)."""
    return poincare_distance(t1, t2) / math.sqrt(2.0)


@dataclass(frozen=True)
class MetricReport:
    """Every distance between one pair of moduli, plus enumeration metadata.

    lambda_ carries a trailing underscore only because `lambda` is a Python
    keyword; it serializes as "lambda".
    """

    tau_from: HPoint
    tau_to: HPoint
    lambda_: float
    teich: float
    kappa_enumerated: float
    kappa_witness: CurveClass | None
    kappa_gap: float
    kappa_prime_fwd: float
    kappa_prime_rev: float
    sorvali_d: float
    s_kappa_prime: float
    wp: float
    poincare: float
    N: int

    def validate(self, exact_tol: float = EXACT_TOL, enum_tol: float = ENUM_TOL) -> list[str]:
        """Names of violated invariants (empty when all hold).

        Closed-form identities are held to exact_tol; quantities enumerated at
        finite N only approach their limits and are held to enum_tol.
        """
        bad = []
        fields = {
            "lambda": self.lambda_,
            "teich": self.teich,
            "kappa_enumerated": self.kappa_enumerated,
            "kappa_gap": self.kappa_gap,
            "kappa_prime_fwd": self.kappa_prime_fwd,
            "kappa_prime_rev": self.kappa_prime_rev,
            "sorvali_d": self.sorvali_d,
            "s_kappa_prime": self.s_kappa_prime,
            "wp": self.wp,
            "poincare": self.poincare,
        }
        for name, value in fields.items():
            if not value >= -exact_tol:
                bad.append(f"{name} is negative: {value!r}")
        if abs(self.lambda_ - self.teich) > exact_tol:
            bad.append("lambda != teich")
        if not self.kappa_enumerated <= self.lambda_ + exact_tol:
            bad.append("kappa_enumerated exceeds lambda")
        if abs(self.s_kappa_prime - self.teich) > enum_tol:
            bad.append("s_kappa_prime does not match teich at enumeration tolerance")
        if self.sorvali_d != max(self.kappa_prime_fwd, self.kappa_prime_rev):
            bad.append("sorvali_d is not the max of the kappa_prime directions")
        if abs(self.lambda_ - 0.5 * self.poincare) > exact_tol:
            bad.append("lambda != poincare/2")
        if abs(self.wp - self.poincare / math.sqrt(2.0)) > exact_tol:
            bad.append("wp != poincare/sqrt(2)")
        return bad


def full_report(t1, t2, N: int = DEFAULT_ENUMERATION_BOUND) -> MetricReport:
    p, q = as_hpoint(t1), as_hpoint(t2)
    kap = kappa_metric(p, q, N)
    fwd = kappa_prime(p, q, N)
    rev = kappa_prime(q, p, N)
    return MetricReport(
        tau_from=p,
        tau_to=q,
        lambda_=lambda_metric(p, q),
        teich=teichmuller_metric(p, q),
        kappa_enumerated=kap.value,
        kappa_witness=kap.witness,
        kappa_gap=kap.gap,
        kappa_prime_fwd=fwd,
        kappa_prime_rev=rev,
        sorvali_d=max(fwd, rev),
        s_kappa_prime=0.5 * (fwd + rev),
        wp=wp_distance(p, q),
        poincare=poincare_distance(p, q),
        N=N,
    )


def sorvali_inequality_report(t1, t2, N: int = DEFAULT_ENUMERATION_BOUND) -> dict:
    """Evaluate d <= d_Teich <= 2d under both Teichmuller-metric conventions.

    The dilatation d is enumerated at N; d_Teich is (1/2) log K in the
    half-log-K convention and log K in the log-K convention.  The report says
    which convention satisfies the double inequality (the log-K one does; the
    halved convention already fails it at t1 = i, t2 = 2i).
    """
    d = sorvali_dilatation(t1, t2, N)
    half = teichmuller_metric(t1, t2)
    tol = EXACT_TOL
    conventions = {
        "log-K": 2.0 * half,
        "half-log-K": half,
    }
    report = {"dilatation": d, "N": N}
    satisfied = []
    for name, value in conventions.items():
        holds = (d <= value + tol) and (value <= 2.0 * d + tol)
        report[name] = {"d_teich": value, "holds": holds}
        if holds:
            satisfied.append(name)
    report["satisfied_by"] = satisfied
    return report
