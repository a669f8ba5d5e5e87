"""Schwarz-type bounds for holomorphic maps into the spectral unit ball.

The spectral unit ball is the set of complex ``n x n`` matrices with
spectral radius below one. This package evaluates the two-point disc
inequality and the self-map growth bound on random and extremal maps, and
reports their slack.
"""

from .bounds import (
    SlackReport,
    check_theorem1,
    check_theorem2,
    globevnik_check,
    naive_check,
    pullback_to_origin,
    ransford_white_check,
    theorem1_lhs,
    theorem1_terms,
    theorem2_bound,
)
from .campaign import CampaignConfig, CampaignReport, run_campaign, subharmonicity_check
from .errors import (
    DegeneratePairError,
    GeneratorViolationError,
    IllConditionedStructureError,
    InvalidInputError,
    NumericalFailureError,
    PreconditionError,
    SpectralSchwarzError,
    UnboundedImageError,
)
from .extremal import (
    StructuredMatrix,
    companion_Nd,
    disc_sharpness,
    example_Fd,
    example_map,
    extremal_disc_map,
    extremal_self_map,
    in_Sn,
    naive_bound_counterexample,
    sample_Sn,
)
from .hyperbolic import (
    BlaschkeProduct,
    Mobius,
    blaschke_eval,
    blaschke_matrix,
    circle_min_modulus,
    dist_M,
    minpoly_blaschke,
    mobius_image_circle,
    pseudo_hyperbolic,
)
from .linalg import eigenvalues, in_spectral_ball, matrix_from_json, matrix_to_json, spectral_radius
from .maps import (
    DiscMapSpec,
    eval_disc_map,
    eval_self_map,
    sample_disc_map,
    sample_omega,
    sample_origin_fixing_map,
    sample_self_map,
)
from .spectrum import MinPoly, Spectrum, cluster_spectrum, minimal_polynomial

__version__ = "0.1.0"

__all__ = [
    "BlaschkeProduct",
    "CampaignConfig",
    "CampaignReport",
    "DegeneratePairError",
    "DiscMapSpec",
    "GeneratorViolationError",
    "IllConditionedStructureError",
    "InvalidInputError",
    "MinPoly",
    "Mobius",
    "NumericalFailureError",
    "PreconditionError",
    "SlackReport",
    "SpectralSchwarzError",
    "Spectrum",
    "StructuredMatrix",
    "UnboundedImageError",
    "blaschke_eval",
    "blaschke_matrix",
    "check_theorem1",
    "check_theorem2",
    "circle_min_modulus",
    "cluster_spectrum",
    "companion_Nd",
    "disc_sharpness",
    "dist_M",
    "eigenvalues",
    "eval_disc_map",
    "eval_self_map",
    "example_Fd",
    "example_map",
    "extremal_disc_map",
    "extremal_self_map",
    "globevnik_check",
    "in_Sn",
    "in_spectral_ball",
    "matrix_from_json",
    "matrix_to_json",
    "minimal_polynomial",
    "minpoly_blaschke",
    "mobius_image_circle",
    "naive_bound_counterexample",
    "naive_check",
    "pseudo_hyperbolic",
    "pullback_to_origin",
    "ransford_white_check",
    "run_campaign",
    "sample_Sn",
    "sample_disc_map",
    "sample_omega",
    "sample_origin_fixing_map",
    "sample_self_map",
    "spectral_radius",
    "subharmonicity_check",
    "theorem1_lhs",
    "theorem1_terms",
    "theorem2_bound",
]
