"""Explicit bounded interpolation on the open unit ball of C^d.

Given nodes whose pairwise pseudohyperbolic separation has a positive
Carleson constant, the package constructs closed-form analytic basis
functions that are 1 at one node and 0 at the others, with an explicit
uniform bound on their absolute column sums.  Interpolation of arbitrary
bounded target values is then a finite linear combination.
"""

from .beurling import (
    BeurlingSystem,
    basis_matrix,
    beurling_function,
    blaschke_factor,
    blaschke_product,
    build_system,
    damping_coefficient,
    exponent_series,
    interpolation_bound,
    kernel_bound,
    kernel_factor,
    sort_by_norm,
)
from .config import DEFAULT_TOLERANCES, Tolerances, load_tolerances
from .estimator import BeurlingInterpolator
from .geometry import (
    BallPoint,
    ConditioningError,
    ball_automorphism,
    inner,
    mobius_shift,
    norm,
    project_complement,
    project_onto,
)
from .interpolation import (
    Interpolant,
    NormEstimate,
    estimate_constant,
    evaluate,
    make_interpolant,
    sample_ball,
    verify_nodes,
)
from .metric import (
    CarlesonReport,
    automorphism_inner_product,
    carleson_delta,
    hayman_newman_check,
    pairwise_pseudohyperbolic,
    pseudohyperbolic,
    pseudohyperbolic_via_automorphism,
)
from .sequences import (
    GeneratorSpec,
    PointSequence,
    generate,
    load_sequence,
    load_values,
    save_sequence,
    save_values,
)

__version__ = "0.1.0"

__all__ = [
    "BallPoint",
    "BeurlingInterpolator",
    "BeurlingSystem",
    "CarlesonReport",
    "ConditioningError",
    "DEFAULT_TOLERANCES",
    "GeneratorSpec",
    "Interpolant",
    "NormEstimate",
    "PointSequence",
    "Tolerances",
    "automorphism_inner_product",
    "ball_automorphism",
    "basis_matrix",
    "beurling_function",
    "blaschke_factor",
    "blaschke_product",
    "build_system",
    "carleson_delta",
    "damping_coefficient",
    "estimate_constant",
    "evaluate",
    "exponent_series",
    "generate",
    "hayman_newman_check",
    "inner",
    "interpolation_bound",
    "kernel_bound",
    "kernel_factor",
    "load_sequence",
    "load_tolerances",
    "load_values",
    "make_interpolant",
    "mobius_shift",
    "norm",
    "pairwise_pseudohyperbolic",
    "project_complement",
    "project_onto",
    "pseudohyperbolic",
    "pseudohyperbolic_via_automorphism",
    "sample_ball",
    "save_sequence",
    "save_values",
    "sort_by_norm",
    "verify_nodes",
]
