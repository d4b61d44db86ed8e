"""The piecewise vertical-stretch family between square and rectangle tori."""

import math

import numpy as np
import pytest

from torusmetrics import (
    PiecewiseStretchMap,
    family_lipschitz_constant,
    family_qc_distortion,
    sampled_family_lipschitz,
    validate_params,
)
from torusmetrics.extremal import evaluate


def test_parameter_validation_examples():
    assert validate_params(2.0, 0.0, 0.25) == (True, None)
    assert validate_params(2.0, 0.4, 0.4) == (True, None)  # bounds 0.3 < 0.4 < 0.5
    ok, reason = validate_params(2.0, 0.0, 0.6)
    assert not ok and "delta must be <" in reason
    ok, reason = validate_params(1.1, 0.0, 0.1)  # lower bound 1/r - r/2 is positive here
    assert not ok and "delta must be >" in reason
    ok, reason = validate_params(1.0, 0.0, 0.25)
    assert not ok and "r must be" in reason
    ok, reason = validate_params(2.0, 0.5, 0.25)
    assert not ok and "eps must" in reason
    ok, reason = validate_params(2.0, math.nan, 0.25)
    assert not ok and "finite" in reason


def test_construction_rejects_invalid_parameters():
    with pytest.raises(ValueError):
        PiecewiseStretchMap(2.0, 0.0, 0.6)
    with pytest.raises(ValueError):
        PiecewiseStretchMap(0.9, 0.0, 0.1)


def test_band_stretches_and_distortion_anchors():
    F = PiecewiseStretchMap(2.0, 0.0, 0.25)
    assert F.bottom_stretch == pytest.approx(0.5, abs=1e-15)
    assert F.top_stretch == pytest.approx(0.5, abs=1e-15)
    assert family_lipschitz_constant(F) == 2.0
    assert family_qc_distortion(F) == pytest.approx(4.0, abs=1e-12)
    assert F.is_affine()

    F = PiecewiseStretchMap(2.0, 0.4, 0.4)
    assert F.bottom_stretch == pytest.approx(1.0, abs=1e-12)
    assert F.top_stretch == pytest.approx(4.0 / 9.0, abs=1e-12)
    assert family_lipschitz_constant(F) == 2.0
    assert family_qc_distortion(F) == pytest.approx(4.5, abs=1e-12)
    assert not F.is_affine()

    F = PiecewiseStretchMap(2.0, 0.0, 0.2)
    assert F.bottom_stretch == pytest.approx(0.6, abs=1e-15)
    assert F.top_stretch == pytest.approx(0.4, abs=1e-15)
    assert family_qc_distortion(F) == pytest.approx(5.0, abs=1e-12)

    F = PiecewiseStretchMap(1.5, 0.1, 0.5)
    assert family_lipschitz_constant(F) == 1.5
    assert family_qc_distortion(F) == pytest.approx(3.6, abs=1e-12)


def test_affine_member_detection_is_sharp():
    assert PiecewiseStretchMap(2.0, 0.0, 0.25).is_affine()
    assert not PiecewiseStretchMap(2.0, 0.0, 0.25 + 1e-9).is_affine()
    # off-center eps with the matching delta is affine too
    assert PiecewiseStretchMap(2.0, 0.1, 0.3).is_affine()


def test_corners_seam_and_scaling():
    F = PiecewiseStretchMap(2.0, 0.1, 0.3)
    r = F.r
    assert evaluate(F, 0j) == 0j
    top = evaluate(F, 1.0 + 1.0j)
    assert abs(top - (r + 1j / r)) <= 1e-12
    lower = evaluate(F, complex(0.3, F.seam))
    upper = evaluate(F, complex(0.3, F.seam + 1e-13))
    assert abs(lower - upper) <= 1e-9
    assert abs(lower - (r * 0.3 + 1j * (1.0 / r - F.delta))) <= 1e-12
    assert evaluate(F, 0.5 + 0j) == pytest.approx(r * 0.5, abs=1e-15)


def test_evaluate_vectorizes_and_guards_the_domain():
    F = PiecewiseStretchMap(2.0, 0.0, 0.2)
    pts = np.array([0.1 + 0.1j, 0.9 + 0.9j, 0.5 + 0.5j])
    batch = evaluate(F, pts)
    assert batch.shape == pts.shape
    for p, q in zip(pts, batch):
        assert q == F.evaluate(complex(p))
    with pytest.raises(ValueError):
        evaluate(F, 1.2 + 0.5j)
    with pytest.raises(ValueError):
        evaluate(F, 0.5 - 0.01j)


def test_members_with_different_parameters_differ_pointwise():
    probe = 0.5 + 0.25j
    a = PiecewiseStretchMap(2.0, 0.0, 0.2).evaluate(probe)
    b = PiecewiseStretchMap(2.0, 0.0, 0.3).evaluate(probe)
    c = PiecewiseStretchMap(2.0, 0.4, 0.4).evaluate(probe)
    assert abs(a - b) > 1e-9
    assert abs(a - c) > 1e-9


def test_sampled_constant_tracks_the_block_maximum():
    affine = sampled_family_lipschitz(PiecewiseStretchMap(2.0, 0.0, 0.25), grid_n=100)
    assert affine <= 2.0 + 1e-9
    assert affine >= 0.99 * 2.0
    skew = sampled_family_lipschitz(PiecewiseStretchMap(2.0, 0.4, 0.4), grid_n=200)
    assert skew <= 2.0 + 1e-9
    assert skew >= 0.99 * 2.0


def test_tiny_grids_stay_below_the_true_constant():
    F = PiecewiseStretchMap(3.0, 0.2, 0.25)
    assert sampled_family_lipschitz(F, grid_n=2) <= family_lipschitz_constant(F) + 1e-9
