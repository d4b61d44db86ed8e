"""Marked tori: normalizations, curve lengths, quotient distances, systoles."""

import math

import numpy as np
import pytest

from torusmetrics import (
    CurveClass,
    HPoint,
    Normalization,
    curve_length,
    make_torus,
    primitive_pairs,
    quotient_norm,
    systole,
    torus_distance,
)

SQRT2 = 1.4142135623730951
HEX_SYSTOLE = 1.074569931823542  # (4/3)**0.25

T_SQUARE = make_torus(HPoint(0, 1))
T_TALL = make_torus(HPoint(0, 2))
T_HEX = make_torus(HPoint(0.5, math.sqrt(3.0) / 2.0))


def _random_tori(rng, count, re_lo=-0.5, re_hi=0.5, im_lo=0.3, im_hi=3.0):
    re = rng.uniform(re_lo, re_hi, count)
    im = rng.uniform(im_lo, im_hi, count)
    return [make_torus(HPoint(a, b)) for a, b in zip(re, im)]


# -------------------------------------------------------------------- classes

def test_curve_class_reduces_to_primitive_with_multiplicity():
    c = CurveClass(2, 4)
    assert c.pair == (1, 2) and c.multiplicity == 2
    c = CurveClass(-6, -9)
    assert c.pair == (-2, -3) and c.multiplicity == 3
    assert CurveClass(0, 7).pair == (0, 1)
    assert CurveClass(1, 0).multiplicity == 1


def test_curve_class_rejects_degenerate_input():
    with pytest.raises(ValueError):
        CurveClass(0, 0)
    with pytest.raises(ValueError):
        CurveClass(1.5, 2)
    with pytest.raises(ValueError):
        CurveClass(1, 1, multiplicity=0)


# --------------------------------------------------------------------- bases

def test_unit_area_basis_anchors():
    assert T_SQUARE.omega1 == 1.0 and T_SQUARE.omega2 == 1j
    assert abs(T_TALL.omega1 - 1.0 / SQRT2) <= 1e-12
    assert abs(T_TALL.omega2 - SQRT2 * 1j) <= 1e-12
    gen = make_torus(HPoint(0, 2), Normalization.UNIT_GENERATOR)
    assert gen.omega1 == 1.0 and gen.omega2 == 2j


def test_unit_area_normalization_has_unit_area():
    rng = np.random.default_rng(21)
    worst = 0.0
    for T in _random_tori(rng, 1000, re_lo=-2.0, re_hi=2.0, im_lo=0.2, im_hi=5.0):
        worst = max(worst, abs(T.area - 1.0))
    assert worst <= 1e-12


# -------------------------------------------------------------------- lengths

def test_curve_length_anchors():
    assert curve_length(T_SQUARE, (1, 0)) == 1.0
    assert abs(curve_length(T_TALL, (0, 1)) - SQRT2) <= 1e-12
    gen = make_torus(HPoint(0, 2), Normalization.UNIT_GENERATOR)
    assert curve_length(gen, (0, 1)) == 2.0
    assert curve_length(T_SQUARE, CurveClass(3, 0)) == pytest.approx(3.0, abs=1e-12)


def test_curve_length_matches_minimal_sampled_representatives():
    # The straight closed representative must be the shortest of a family of
    # homotopic polylines, and its sampled polygonal length must recover the
    # reported value to 1%.
    rng = np.random.default_rng(22)
    ms, ns = primitive_pairs(4)
    samples = 10_000
    t = np.linspace(0.0, 1.0, samples + 1)
    bump = np.sin(math.pi * t)
    for T in _random_tori(rng, 3):
        sys_len = systole(T)[1]
        for _ in range(4):
            j = int(rng.integers(len(ms)))
            vec = ms[j] * T.omega1 + ns[j] * T.omega2
            best = math.inf
            for k in range(5):
                wiggle = 0.0 if k == 0 else 0.3 * sys_len * bump * np.exp(1j * rng.uniform(0, 2 * math.pi))
                path = t * vec + wiggle
                best = min(best, float(np.sum(quotient_norm(T, np.diff(path)))))
            reported = curve_length(T, (int(ms[j]), int(ns[j])))
            assert best <= reported * 1.01
            assert best >= reported * (1.0 - 1e-9)


# ------------------------------------------------------------------ distances

def test_torus_distance_examples():
    assert torus_distance(T_SQUARE, 0.0, 0.9) == pytest.approx(0.1, abs=1e-12)
    assert torus_distance(T_SQUARE, 0.0, 0.5 + 0.5j) == pytest.approx(SQRT2 / 2.0, abs=1e-12)
    assert torus_distance(T_SQUARE, 0.25 + 0.25j, 0.25 + 0.25j) == 0.0


def test_quotient_norm_matches_brute_force_on_skew_lattices():
    rng = np.random.default_rng(23)
    taus = [HPoint(0, 1), HPoint(0.5, math.sqrt(3) / 2), HPoint(2.0, 0.2), HPoint(-1.3, 0.4), HPoint(0.1, 4.0)]
    k = np.arange(-8, 9)
    K, L = np.meshgrid(k, k, indexing="ij")
    for tau in taus:
        for norm in (Normalization.UNIT_AREA, Normalization.UNIT_GENERATOR):
            T = make_torus(tau, norm)
            lattice = (K * T.omega1 + L * T.omega2).ravel()
            for _ in range(100):
                a, b = rng.uniform(-1.5, 1.5, 2)
                w = a * T.omega1 + b * T.omega2
                brute = float(np.min(np.abs(w - lattice)))
                assert abs(quotient_norm(T, w) - brute) <= 1e-12


def test_quotient_norm_accepts_arrays():
    w = np.array([[0.9, 0.5 + 0.5j], [0.0, 2.0 + 1.0j]])
    d = quotient_norm(T_SQUARE, w)
    assert d.shape == w.shape
    assert d[1, 0] == 0.0
    assert d[0, 0] == pytest.approx(0.1, abs=1e-12)


def test_torus_distance_axioms_and_plane_bound():
    rng = np.random.default_rng(24)
    for T in _random_tori(rng, 50):
        pts = rng.uniform(-1, 1, 3) * T.omega1 + rng.uniform(-1, 1, 3) * T.omega2
        x, y, z = pts
        assert torus_distance(T, x, y) == torus_distance(T, y, x)
        assert torus_distance(T, x, x) == 0.0
        assert torus_distance(T, x, y) <= abs(x - y) + 1e-12
        assert torus_distance(T, x, y) + torus_distance(T, y, z) >= torus_distance(T, x, z) - 1e-12


# -------------------------------------------------------------------- systole

def test_primitive_pairs_enumerates_canonical_coprime_representatives():
    ms, ns = primitive_pairs(3)
    pairs = set(zip(ms.tolist(), ns.tolist()))
    assert (0, 1) in pairs and (0, -1) not in pairs
    assert all(m > 0 or (m, n) == (0, 1) for m, n in pairs)
    assert all(math.gcd(m, abs(n)) == 1 for m, n in pairs)
    assert (2, 3) in pairs and (2, -3) in pairs and (2, 2) not in pairs
    with pytest.raises(ValueError):
        primitive_pairs(0)


def test_systole_anchors():
    cls, length = systole(T_SQUARE)
    assert cls.pair == (1, 0) and length == 1.0
    cls, length = systole(T_TALL)
    assert cls.pair == (1, 0) and abs(length - 1.0 / SQRT2) <= 1e-12
    cls, length = systole(T_HEX)
    assert abs(length - HEX_SYSTOLE) <= 1e-12


def test_systole_is_minimal_within_a_large_box():
    rng = np.random.default_rng(25)
    ms, ns = primitive_pairs(50)
    for T in _random_tori(rng, 20, re_lo=-2.0, re_hi=2.0, im_lo=0.2, im_hi=5.0):
        cls, length = systole(T)
        assert abs(curve_length(T, cls) - length) <= 1e-12
        box_min = float(np.min(np.abs(ms * T.omega1 + ns * T.omega2)))
        assert length <= box_min + 1e-12
