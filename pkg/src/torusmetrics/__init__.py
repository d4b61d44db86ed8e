"""Metrics on the moduli space of marked flat tori.

The moduli parameter lives in the upper half-plane; distances between marked
tori (least Lipschitz constant, Teichmuller, curve-ratio, Sorvali,
Weil-Petersson) all reduce to half-plane geometry and are cross-checked
against sampling oracles that never touch the closed forms.
"""

from .halfplane import (
    HPoint,
    IntMatrix2,
    as_hpoint,
    geodesic_path,
    geodesic_point,
    mobius_apply,
    poincare_distance,
    reduce_to_fundamental_domain,
)
from .torus import (
    CurveClass,
    MarkedTorus,
    Normalization,
    curve_length,
    make_torus,
    primitive_pairs,
    quotient_norm,
    systole,
    torus_distance,
)
from .linmap import (
    LinearMap2,
    affine_comparison_map,
    compose,
    invert,
    lipschitz_constant,
    qc_distortion,
    singular_values,
    upper_triangular_lipschitz,
    upper_triangular_map,
)
from .extremal import (
    PiecewiseStretchMap,
    family_lipschitz_constant,
    family_qc_distortion,
    sampled_family_lipschitz,
    validate_params,
)
from .oracle import (
    SamplingConfig,
    direction_sampled_norm,
    hyperbolic_path_length,
    sampled_lipschitz,
)
from .metrics import (
    KappaResult,
    MetricReport,
    full_report,
    kappa_metric,
    kappa_prime,
    lambda_metric,
    max_stretch_ratio,
    s_kappa_prime,
    sorvali_dilatation,
    sorvali_inequality_report,
    teichmuller_metric,
    wp_distance,
    wp_tensor,
)
from .verify import run_all

__version__ = "0.1.0"
