"""Tilted-posterior error bounds and channel reliability exponent curves."""

__version__ = "0.1.0"

from .bounds import (
    THETA_LIMIT,
    BoundCurve,
    awgn_bound_closed_form,
    awgn_map_error,
    bec_bound_closed_form,
    fano_bounds,
    map_error_exact,
    maximize_over_alpha,
    normal_cdf,
    poor_verdu_bound,
    tilted_error_bound,
    tilted_error_bound_brute,
    tilted_error_bound_curve,
    tilted_error_bound_limit,
    unique_map_exact_error,
)
from .channels import (
    BlockCode,
    Dmc,
    bec,
    binary_entropy,
    bsc,
    bsc_capacity,
    builtin_channel,
    code_joint,
    dmc_capacity,
    is_row_symmetric,
    load_channel_file,
    product_extension,
    ternary_channel,
    tilted_channel,
    tilted_info_density,
    z_capacity,
    z_channel,
)
from .codes import (
    code_error_lower_bound,
    exact_code_error,
    ml_estimate_unique,
    monte_carlo_code_error,
)
from .errors import (
    InvalidParameterError,
    OptimizerError,
    SizeCapError,
    ZeroProbabilityError,
)
from .prob import (
    JointFiniteModel,
    Pmf,
    PosteriorProfile,
    mutual_information,
    posterior,
    posterior_profile,
    tilt_pmf,
)
from .reliability import (
    ExponentPoint,
    exponent_lower_bound,
    exponent_objective,
    maximize_scalar,
    sphere_packing,
)

__all__ = [
    "THETA_LIMIT",
    "BlockCode",
    "BoundCurve",
    "Dmc",
    "ExponentPoint",
    "InvalidParameterError",
    "JointFiniteModel",
    "OptimizerError",
    "Pmf",
    "PosteriorProfile",
    "SizeCapError",
    "ZeroProbabilityError",
    "awgn_bound_closed_form",
    "awgn_map_error",
    "bec",
    "bec_bound_closed_form",
    "binary_entropy",
    "bsc",
    "bsc_capacity",
    "builtin_channel",
    "code_error_lower_bound",
    "code_joint",
    "dmc_capacity",
    "exact_code_error",
    "exponent_lower_bound",
    "exponent_objective",
    "fano_bounds",
    "is_row_symmetric",
    "load_channel_file",
    "map_error_exact",
    "maximize_over_alpha",
    "maximize_scalar",
    "ml_estimate_unique",
    "monte_carlo_code_error",
    "mutual_information",
    "normal_cdf",
    "poor_verdu_bound",
    "posterior",
    "posterior_profile",
    "product_extension",
    "sphere_packing",
    "ternary_channel",
    "tilt_pmf",
    "tilted_channel",
    "tilted_error_bound",
    "tilted_error_bound_brute",
    "tilted_error_bound_curve",
    "tilted_error_bound_limit",
    "tilted_info_density",
    "unique_map_exact_error",
    "z_capacity",
    "z_channel",
]
