"""The six distances and their cross identities."""

import dataclasses
import math

import numpy as np
import pytest

from torusmetrics import (
    CurveClass,
    HPoint,
    full_report,
    kappa_metric,
    kappa_prime,
    lambda_metric,
    make_torus,
    max_stretch_ratio,
    poincare_distance,
    primitive_pairs,
    s_kappa_prime,
    sorvali_dilatation,
    sorvali_inequality_report,
    teichmuller_metric,
    wp_distance,
    wp_tensor,
)

LOG2 = 0.6931471805599453
HALF_LOG2 = 0.34657359027997264
LOG_PHI = 0.48121182505960347
WP_I_2I = 0.4901290717342736  # log(2)/sqrt(2)
KAPPA_I_1PI_500 = 0.4812118250573895  # enumerated at N=500; witness (233, 377)

I = HPoint(0, 1)
I2 = HPoint(0, 2)
ONE_PLUS_I = HPoint(1, 1)


def _pairs(rng, count):
    re = rng.uniform(-2.0, 2.0, 2 * count)
    im = rng.uniform(0.2, 5.0, 2 * count)
    pts = [HPoint(a, b) for a, b in zip(re, im)]
    return list(zip(pts[::2], pts[1::2]))


# ------------------------------------------------------------------- anchors

def test_symmetric_metric_anchors():
    assert lambda_metric(I, I) == 0.0
    assert lambda_metric(I, I2) == pytest.approx(HALF_LOG2, abs=1e-12)
    assert lambda_metric(I, ONE_PLUS_I) == pytest.approx(LOG_PHI, abs=1e-12)
    assert teichmuller_metric(I, I2) == pytest.approx(HALF_LOG2, abs=1e-12)
    assert teichmuller_metric(I, ONE_PLUS_I) == pytest.approx(LOG_PHI, abs=1e-12)
    assert wp_distance(I, I2) == pytest.approx(WP_I_2I, abs=1e-12)
    assert wp_tensor(I) == 0.5
    assert wp_tensor(I2) == 0.125


def test_enumerated_stretch_anchors():
    res = kappa_metric(I, I2, 5)
    assert res.value == pytest.approx(HALF_LOG2, abs=1e-12)
    assert res.witness.pair == (0, 1)
    assert res.gap == 0.0

    res = kappa_metric(I, ONE_PLUS_I, 500)
    assert res.value == pytest.approx(KAPPA_I_1PI_500, abs=1e-12)
    assert res.witness.pair == (233, 377)  # consecutive Fibonacci numbers
    assert 0.0 < res.gap < 1e-6
    assert abs((res.value + res.gap) - lambda_metric(I, ONE_PLUS_I)) <= 1e-15

    res = kappa_metric(I, I, 7)
    assert res.value == 0.0 and res.gap == 0.0
    assert res.witness.pair == (1, 0)  # tie against (0, 1) broken toward larger m


def test_directed_stretch_anchors_hold_at_every_bound():
    for N in (1, 2, 10, 500):
        assert kappa_prime(I, I2, N) == pytest.approx(LOG2, abs=1e-12)
        assert kappa_prime(I2, I, N) == 0.0
    assert kappa_prime(I, I, 3) == 0.0
    assert sorvali_dilatation(I, I2, 5) == pytest.approx(LOG2, abs=1e-12)
    assert sorvali_dilatation(I2, I, 5) == pytest.approx(LOG2, abs=1e-12)
    assert s_kappa_prime(I, I2, 5) == pytest.approx(HALF_LOG2, abs=1e-12)


# ---------------------------------------------------------------- properties

def test_lambda_is_a_symmetric_metric():
    rng = np.random.default_rng(51)
    worst = 0.0
    for a, b in _pairs(rng, 150):
        dab = lambda_metric(a, b)
        assert abs(dab - lambda_metric(b, a)) <= 1e-12
        assert dab > 1e-9
        c = HPoint(rng.uniform(-2, 2), rng.uniform(0.2, 5))
        worst = min(worst, dab + lambda_metric(b, c) - lambda_metric(a, c))
    assert worst >= -1e-12


def test_cross_metric_identities_on_random_pairs():
    rng = np.random.default_rng(52)
    worst = 0.0
    for a, b in _pairs(rng, 200):
        lam = lambda_metric(a, b)
        worst = max(worst, abs(lam - teichmuller_metric(a, b)))
        worst = max(worst, abs(lam - 0.5 * poincare_distance(a, b)))
        worst = max(worst, abs(wp_distance(a, b) - poincare_distance(a, b) / math.sqrt(2.0)))
    assert worst <= 1e-12


def test_enumeration_is_monotone_and_bounded_by_lambda():
    rng = np.random.default_rng(53)
    for a, b in _pairs(rng, 10):
        lam = lambda_metric(a, b)
        last = -math.inf
        for N in (5, 20, 100, 500):
            value = kappa_metric(a, b, N).value
            assert value >= last
            assert value <= lam + 1e-12
            last = value


def test_enumeration_is_independent_of_partitioning():
    T1, T2 = make_torus(I), make_torus(ONE_PLUS_I)
    whole, witness = max_stretch_ratio(T1, T2, 500)
    ms, ns = primitive_pairs(500)
    num = np.abs(ms * T2.omega1 + ns * T2.omega2)
    den = np.abs(ms * T1.omega1 + ns * T1.omega2)
    ratios = num / den
    pieces = [ratios[k::7] for k in range(7)]
    assert max(float(p.max()) for p in pieces) == whole
    assert witness.pair == (233, 377)


def test_directed_stretch_is_genuinely_asymmetric_but_symmetrizes():
    rng = np.random.default_rng(54)
    assert kappa_prime(I, I2, 5) != kappa_prime(I2, I, 5)
    for a, b in _pairs(rng, 25):
        assert sorvali_dilatation(a, b, 50) == sorvali_dilatation(b, a, 50)
        assert s_kappa_prime(a, b, 50) == s_kappa_prime(b, a, 50)
    # the symmetrized mean approaches the symmetric metric as N grows
    for a, b in _pairs(rng, 10):
        gap_small = abs(s_kappa_prime(a, b, 20) - teichmuller_metric(a, b))
        gap_big = abs(s_kappa_prime(a, b, 500) - teichmuller_metric(a, b))
        assert gap_big <= gap_small + 1e-12
        assert gap_big <= 1e-6


# -------------------------------------------------------------------- report

def test_full_report_identity_pair_is_all_zero():
    rep = full_report(I, I, 10)
    assert rep.lambda_ == rep.teich == rep.kappa_enumerated == 0.0
    assert rep.kappa_gap == rep.kappa_prime_fwd == rep.kappa_prime_rev == 0.0
    assert rep.sorvali_d == rep.s_kappa_prime == rep.wp == rep.poincare == 0.0
    assert rep.kappa_witness.pair == (1, 0)
    assert rep.N == 10
    assert rep.validate() == []


def test_full_report_anchor_pairs_validate():
    rep = full_report(I, I2, 10)
    assert rep.lambda_ == pytest.approx(HALF_LOG2, abs=1e-12)
    assert rep.kappa_gap == 0.0
    assert rep.sorvali_d == pytest.approx(LOG2, abs=1e-12)
    assert rep.validate() == []

    rep = full_report(I, ONE_PLUS_I, 500)
    assert 0.0 < rep.kappa_gap < 1e-6
    assert rep.validate() == []


def test_full_report_validates_on_random_pairs():
    rng = np.random.default_rng(55)
    for a, b in _pairs(rng, 20):
        assert full_report(a, b).validate() == []


def test_validate_names_broken_invariants():
    rep = full_report(I, I2, 10)
    bad = dataclasses.replace(rep, lambda_=rep.lambda_ + 1e-3).validate()
    assert "lambda != teich" in bad
    assert "lambda != poincare/2" in bad
    bad = dataclasses.replace(rep, kappa_enumerated=rep.lambda_ + 1e-3).validate()
    assert any(v.startswith("kappa_enumerated") for v in bad)
    bad = dataclasses.replace(rep, sorvali_d=rep.sorvali_d + 1e-15).validate()
    assert any("sorvali_d" in v for v in bad)
    bad = dataclasses.replace(rep, wp=-1.0).validate()
    assert any("negative" in v for v in bad)
    bad = dataclasses.replace(rep, s_kappa_prime=rep.s_kappa_prime + 1e-3).validate()
    assert any("s_kappa_prime" in v for v in bad)


def test_inequality_report_identifies_the_working_convention():
    rep = sorvali_inequality_report(I, I2, 5)
    assert rep["dilatation"] == pytest.approx(LOG2, abs=1e-12)
    assert rep["satisfied_by"] == ["log-K"]
    assert rep["log-K"]["holds"] and not rep["half-log-K"]["holds"]
    assert rep["log-K"]["d_teich"] == pytest.approx(LOG2, abs=1e-12)
    assert rep["half-log-K"]["d_teich"] == pytest.approx(HALF_LOG2, abs=1e-12)


def test_kappa_result_reduces_nonprimitive_witnesses():
    # enumeration only walks primitive classes, so the witness is primitive
    res = kappa_metric(I, I2, 5)
    assert isinstance(res.witness, CurveClass)
    assert math.gcd(abs(res.witness.m), abs(res.witness.n)) == 1
