"""Self-check battery: re-derives the library's invariants from sampling
oracles and random draws, one named check per invariant group.

Used by the `verify` CLI verb; every check returns (ok, detail) and the runner
reports one line per check.  Draw counts shrink under quick=True.
"""

from __future__ import annotations

import math
import zlib
from typing import Callable, NamedTuple

import numpy as np

from .extremal import (
    PiecewiseStretchMap,
    family_lipschitz_constant,
    family_qc_distortion,
    sampled_family_lipschitz,
    validate_params,
)
from .halfplane import (
    HPoint,
    IntMatrix2,
    geodesic_point,
    mobius_apply,
    poincare_distance,
    reduce_to_fundamental_domain,
)
from .linmap import (
    LinearMap2,
    affine_comparison_map,
    compose,
    invert,
    lipschitz_constant,
    qc_distortion,
    upper_triangular_lipschitz,
    upper_triangular_map,
)
from .metrics import (
    full_report,
    kappa_metric,
    kappa_prime,
    lambda_metric,
    s_kappa_prime,
    sorvali_inequality_report,
    teichmuller_metric,
    wp_distance,
    wp_tensor,
)
from .oracle import SamplingConfig, direction_sampled_norm, hyperbolic_path_length, sampled_lipschitz
from .torus import CurveClass, curve_length, make_torus, primitive_pairs, systole, torus_distance

__all__ = ["CheckResult", "run_all", "ALL_CHECKS"]

EXACT_TOL = 1e-12
ENUM_TOL = 1e-6


class CheckResult(NamedTuple):
    name: str
    ok: bool
    detail: str


def _points(rng, count, re_lo=-2.0, re_hi=2.0, im_lo=0.2, im_hi=5.0):
    re = rng.uniform(re_lo, re_hi, count)
    im = rng.uniform(im_lo, im_hi, count)
    return [HPoint(a, b) for a, b in zip(re, im)]


def _random_unimodular(rng, factors=4) -> IntMatrix2:
    # Words kept short (and translations small) so the transformed points stay
    # at moderate height; far below that, coordinate roundoff alone costs more
    # than the 1e-12 the invariance checks assert.
    M = IntMatrix2.identity()
    S = IntMatrix2(0, -1, 1, 0)
    for _ in range(int(rng.integers(1, factors + 1))):
        if rng.random() < 0.5:
            M = M @ IntMatrix2(1, int(rng.integers(-2, 3)), 0, 1)
        else:
            M = M @ S
    return M


def _random_det1_map(rng, d_lo=0.3, d_hi=3.0, c_hi=2.0) -> LinearMap2:
    theta = rng.uniform(0.0, math.pi)
    c, s = math.cos(theta), math.sin(theta)
    rot = LinearMap2(c, -s, s, c)
    shear = upper_triangular_map(rng.uniform(-c_hi, c_hi), math.exp(rng.uniform(math.log(d_lo), math.log(d_hi))))
    return compose(rot, shear)


def check_poincare_metric_axioms(rng, n):
    worst = 0.0
    pts = _points(rng, 3 * n, re_lo=-5.0, re_hi=5.0, im_lo=0.1, im_hi=10.0)
    for i in range(n):
        a, b, c = pts[3 * i], pts[3 * i + 1], pts[3 * i + 2]
        dab, dba = poincare_distance(a, b), poincare_distance(b, a)
        if dab != dba:
            return False, f"symmetry broken at {a}, {b}"
        if poincare_distance(a, a) != 0.0 or dab <= 0.0:
            return False, "zero-iff-equal broken"
        slack = dab + poincare_distance(b, c) - poincare_distance(a, c)
        worst = min(worst, slack)
    ok = worst >= -EXACT_TOL
    return ok, f"worst triangle slack {worst:.3e}"


def check_poincare_mobius_invariance(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = _points(rng, 2, im_lo=0.1, im_hi=10.0)
        M = _random_unimodular(rng)
        drift = abs(poincare_distance(mobius_apply(M, a), mobius_apply(M, b)) - poincare_distance(a, b))
        worst = max(worst, drift)
    return worst <= EXACT_TOL, f"worst invariance drift {worst:.3e}"


def check_poincare_path_integration(rng, n):
    cfg = SamplingConfig(path_samples=10_000)
    weight = lambda z: 1.0 / (z.imag * z.imag)
    anchors = [(HPoint(0, 1), HPoint(0, 2)), (HPoint(0, 1), HPoint(1, 1))]
    pairs = anchors + [tuple(_points(rng, 2, im_lo=0.5, im_hi=3.0, re_lo=-1.0, re_hi=1.0)) for _ in range(n)]
    worst = 0.0
    for a, b in pairs:
        worst = max(worst, abs(hyperbolic_path_length(a, b, weight, cfg) - poincare_distance(a, b)))
    return worst <= 1e-7, f"worst quadrature error {worst:.3e}"


def check_geodesic_interpolation(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = _points(rng, 2, im_lo=0.1, im_hi=10.0)
        t = rng.random()
        w = geodesic_point(a, b, t)
        worst = max(worst, abs(poincare_distance(a, w) - t * poincare_distance(a, b)))
    return worst <= 1e-9, f"worst proportionality error {worst:.3e}"


def check_fundamental_domain_reduction(rng, n):
    for p in _points(rng, n, re_lo=-5.0, re_hi=5.0, im_lo=0.1, im_hi=10.0):
        w, M = reduce_to_fundamental_domain(p)
        if abs(w.re) > 0.5 or w.re * w.re + w.im * w.im < 1.0:
            return False, f"{p} reduced outside the domain"
        v = mobius_apply(M, p)
        if math.hypot(v.re - w.re, v.im - w.im) > EXACT_TOL:
            return False, f"witness does not reproduce the reduction of {p}"
    return True, f"{n} reductions verified"


def check_unit_area_normalization(rng, n):
    worst = 0.0
    for p in _points(rng, n):
        worst = max(worst, abs(make_torus(p).area - 1.0))
    return worst <= EXACT_TOL, f"worst area defect {worst:.3e}"


def check_torus_distance_axioms(rng, n):
    worst = 0.0
    for p in _points(rng, n, re_lo=-0.5, re_hi=0.5, im_lo=0.3, im_hi=3.0):
        T = make_torus(p)
        pts = (rng.uniform(-1, 1, 3) * T.omega1 + rng.uniform(-1, 1, 3) * T.omega2)
        x, y, z = pts
        if torus_distance(T, x, y) != torus_distance(T, y, x):
            return False, "symmetry broken"
        if torus_distance(T, x, x) != 0.0:
            return False, "self-distance nonzero"
        # the zero-translate candidate is rebuilt from solved coordinates, so
        # it can sit an ulp above the directly computed plane distance
        if torus_distance(T, x, y) > abs(x - y) + EXACT_TOL:
            return False, "quotient distance exceeds plane distance"
        slack = torus_distance(T, x, y) + torus_distance(T, y, z) - torus_distance(T, x, z)
        worst = min(worst, slack)
    return worst >= -EXACT_TOL, f"worst triangle slack {worst:.3e}"


def check_systole_minimality(rng, n):
    box = 50
    ms, ns = primitive_pairs(box)
    for p in _points(rng, n):
        T = make_torus(p)
        cls, length = systole(T)
        lengths = np.abs(ms * T.omega1 + ns * T.omega2)
        if length > lengths.min() + EXACT_TOL:
            return False, f"systole at {p} beaten inside the {box}-box"
        if abs(curve_length(T, cls) - length) > EXACT_TOL:
            return False, "witness length mismatch"
    return True, f"{n} tori checked against the {box}-box"


def check_triangular_lipschitz_closed_form(rng, n):
    worst = 0.0
    for _ in range(n):
        c = rng.uniform(-10.0, 10.0)
        d = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
        worst = max(worst, abs(upper_triangular_lipschitz(c, d) - lipschitz_constant(upper_triangular_map(c, d))))
    return worst <= EXACT_TOL, f"worst closed-form drift {worst:.3e}"


def check_direction_oracle(rng, n):
    cfg = SamplingConfig(direction_samples=100_000)
    worst_gap, worst_excess = 0.0, 0.0
    for _ in range(n):
        M = _random_det1_map(rng)
        L = lipschitz_constant(M)
        sampled = direction_sampled_norm(M, cfg)
        worst_gap = max(worst_gap, L - sampled)
        worst_excess = max(worst_excess, sampled - L)
    ok = worst_gap <= ENUM_TOL and worst_excess <= 1e-9
    return ok, f"worst gap {worst_gap:.3e}, worst excess {worst_excess:.3e}"


def check_distortion_identities(rng, n):
    worst = 0.0
    for _ in range(n):
        M = _random_det1_map(rng)
        L = lipschitz_constant(M)
        worst = max(worst, abs(qc_distortion(M) - L * L))
        worst = max(worst, abs(lipschitz_constant(invert(M)) - L))
    return worst <= EXACT_TOL, f"worst identity drift {worst:.3e}"


def check_affine_functoriality(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b, c = _points(rng, 3)
        direct = affine_comparison_map(make_torus(a), make_torus(c))
        chained = compose(affine_comparison_map(make_torus(b), make_torus(c)),
                          affine_comparison_map(make_torus(a), make_torus(b)))
        worst = max(worst, max(abs(x - y) for rx, ry in zip(direct.rows(), chained.rows()) for x, y in zip(rx, ry)))
    return worst <= EXACT_TOL, f"worst composition drift {worst:.3e}"


def check_sampled_affine_lipschitz(rng, n, grid_n=200):
    cfg = SamplingConfig(grid_n=grid_n, seed=int(rng.integers(2**31)))
    for _ in range(n):
        a, b = _points(rng, 2, re_lo=-0.5, re_hi=0.5, im_lo=0.3, im_hi=3.0)
        T1, T2 = make_torus(a), make_torus(b)
        A = affine_comparison_map(T1, T2)
        L = lipschitz_constant(A)
        sampled = sampled_lipschitz(A, T1, T2, cfg)
        if sampled > L + 1e-9:
            return False, f"oracle exceeded the closed form at ({a}, {b})"
        if sampled < 0.99 * L:
            return False, f"oracle below 99% of the closed form at ({a}, {b})"
    return True, f"{n} affine maps sampled at grid {grid_n}"


def check_lambda_axioms(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b, c = _points(rng, 3)
        dab = lambda_metric(a, b)
        # forward and reverse go through different comparison matrices, so
        # symmetry is exact only up to roundoff
        if abs(dab - lambda_metric(b, a)) > EXACT_TOL:
            return False, "symmetry broken"
        if lambda_metric(a, a) != 0.0 or dab <= 1e-9:
            return False, "zero-iff-equal broken"
        worst = min(worst, dab + lambda_metric(b, c) - lambda_metric(a, c))
    return worst >= -EXACT_TOL, f"worst triangle slack {worst:.3e}"


def check_metric_identities(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = _points(rng, 2)
        lam = lambda_metric(a, b)
        worst = max(worst, abs(lam - teichmuller_metric(a, b)))
        worst = max(worst, abs(lam - 0.5 * poincare_distance(a, b)))
        worst = max(worst, abs(wp_distance(a, b) - poincare_distance(a, b) / math.sqrt(2.0)))
    ok = worst <= EXACT_TOL and wp_tensor(HPoint(0, 1)) == 0.5
    return ok, f"worst identity drift {worst:.3e}"


def check_modular_invariance(rng, n):
    worst = 0.0
    for _ in range(n):
        a, b = _points(rng, 2)
        M = _random_unimodular(rng)
        worst = max(worst, abs(lambda_metric(mobius_apply(M, a), mobius_apply(M, b)) - lambda_metric(a, b)))
    return worst <= EXACT_TOL, f"worst invariance drift {worst:.3e}"


def check_kappa_convergence(rng, n):
    anchor = kappa_metric(HPoint(0, 1), HPoint(0, 2), N=5)
    if anchor.gap != 0.0 or anchor.witness.pair != (0, 1):
        return False, "anchor witness/gap mismatch"
    worst = 0.0
    for _ in range(n):
        a, b = _points(rng, 2)
        res = kappa_metric(a, b, N=500)
        if res.gap < -EXACT_TOL:
            return False, "kappa exceeded lambda"
        worst = max(worst, res.gap)
        if kappa_metric(a, b, N=50).value > res.value + EXACT_TOL:
            return False, "kappa not monotone in N"
    return worst <= ENUM_TOL, f"worst gap at N=500: {worst:.3e}"


def check_kappa_prime_symmetrization(rng, n):
    if abs(kappa_prime(HPoint(0, 1), HPoint(0, 2), 1) - math.log(2.0)) > EXACT_TOL:
        return False, "forward anchor broken"
    if kappa_prime(HPoint(0, 2), HPoint(0, 1), 1) != 0.0:
        return False, "reverse anchor broken"
    conv = sorvali_inequality_report(HPoint(0, 1), HPoint(0, 2))
    if "log-K" not in conv["satisfied_by"] or "half-log-K" in conv["satisfied_by"]:
        return False, f"convention labeling off: {conv['satisfied_by']}"
    worst = 0.0
    for _ in range(n):
        a, b = _points(rng, 2)
        worst = max(worst, abs(s_kappa_prime(a, b, 500) - teichmuller_metric(a, b)))
    return worst <= ENUM_TOL, f"worst symmetrization gap {worst:.3e}"


def check_wp_path_integration(rng, n):
    cfg = SamplingConfig(path_samples=10_000)
    weight = lambda z: 0.5 / (z.imag * z.imag)
    worst = 0.0
    for _ in range(n):
        a, b = _points(rng, 2, im_lo=0.5, im_hi=3.0, re_lo=-1.0, re_hi=1.0)
        worst = max(worst, abs(hyperbolic_path_length(a, b, weight, cfg) - wp_distance(a, b)))
    return worst <= 1e-7, f"worst quadrature error {worst:.3e}"


def check_extremal_family(rng, n):
    ok, reason = validate_params(2.0, 0.0, 0.6)
    if ok:
        return False, "invalid parameters accepted"
    for r in (1.5, 2.0, 3.0):
        for _ in range(max(2, n // 3)):
            eps = rng.uniform(-0.4, 0.4)
            lo = max(0.0, 1.0 / r - 0.5 * r + eps * r)
            hi = min(1.0 / r, 0.5 * r + eps * r)
            F = PiecewiseStretchMap(r, eps, lo + rng.uniform(0.2, 0.8) * (hi - lo))
            if family_lipschitz_constant(F) != r:
                return False, f"family Lipschitz constant is not r at {F}"
            if family_qc_distortion(F) < r * r - EXACT_TOL:
                return False, f"distortion below r^2 at {F}"
            seam = complex(0.3, F.seam)
            if abs(F.evaluate(seam) - F.evaluate(complex(0.3, min(1.0, F.seam + 1e-13)))) > 1e-9:
                return False, "seam discontinuity"
    sampled = sampled_family_lipschitz(PiecewiseStretchMap(2.0, 0.4, 0.4), grid_n=40)
    if not (0.99 * 2.0 <= sampled <= 2.0 + 1e-9):
        return False, f"sampled family Lipschitz {sampled} not within 1% of 2"
    return True, "family sweep verified"


def check_report_invariants(rng, n):
    pairs = [(HPoint(0, 1), HPoint(0, 2))] + [tuple(_points(rng, 2)) for _ in range(n)]
    for a, b in pairs:
        bad = full_report(a, b).validate()
        if bad:
            return False, "; ".join(bad)
    return True, f"{len(pairs)} reports validated"


ALL_CHECKS: list[tuple[str, Callable, int, int]] = [
    # (name, fn(rng, n) -> (ok, detail), full n, quick n)
    ("poincare-metric-axioms", check_poincare_metric_axioms, 1000, 100),
    ("poincare-mobius-invariance", check_poincare_mobius_invariance, 200, 20),
    ("poincare-path-integration", check_poincare_path_integration, 20, 3),
    ("geodesic-interpolation", check_geodesic_interpolation, 200, 20),
    ("fundamental-domain-reduction", check_fundamental_domain_reduction, 500, 50),
    ("unit-area-normalization", check_unit_area_normalization, 500, 50),
    ("torus-distance-axioms", check_torus_distance_axioms, 200, 20),
    ("systole-minimality", check_systole_minimality, 10, 3),
    ("triangular-lipschitz-closed-form", check_triangular_lipschitz_closed_form, 1000, 100),
    ("direction-sampled-norm", check_direction_oracle, 100, 10),
    ("distortion-identities", check_distortion_identities, 1000, 100),
    ("affine-map-functoriality", check_affine_functoriality, 200, 20),
    ("sampled-affine-lipschitz", check_sampled_affine_lipschitz, 3, 1),
    ("lambda-metric-axioms", check_lambda_axioms, 300, 30),
    ("metric-identities", check_metric_identities, 300, 30),
    ("modular-invariance", check_modular_invariance, 100, 10),
    ("kappa-convergence", check_kappa_convergence, 20, 5),
    ("kappa-prime-symmetrization", check_kappa_prime_symmetrization, 20, 5),
    ("wp-path-integration", check_wp_path_integration, 20, 3),
    ("extremal-family", check_extremal_family, 9, 3),
    ("report-invariants", check_report_invariants, 10, 2),
]


def run_all(seed: int = 0, quick: bool = False, report=print) -> list[CheckResult]:
    """Run every check; one output line each.  Any failure makes the battery fail."""
    results = []
    for name, fn, n_full, n_quick in ALL_CHECKS:
        rng = np.random.default_rng([seed, zlib.crc32(name.encode())])
        try:
            ok, detail = fn(rng, n_quick if quick else n_full)
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, ok, detail))
        report(f"{'ok  ' if ok else 'FAIL'} {name} ({detail})")
    return results
