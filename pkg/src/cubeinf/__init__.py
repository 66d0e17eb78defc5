"""Exact Fourier analysis of real functions on {-1, 1}^n and their influence bounds.

Truth tables are indexed so that bit k of the index is 0 when x_{k+1} = +1;
index 0 is the all-ones point.
"""

from .bounds import random_bounded, run_checks
from .constructs import character, chebyshev_symmetric, klurman_monotone_extremal, named_example
from .cube import (
    CONVENTION,
    MAX_N,
    CubeFunction,
    FourierExpansion,
    PropertyFlags,
    classify,
    fourier,
    from_callable,
    from_json_dict,
    from_truth_table,
    synthesize,
    to_json_dict,
)
from .influence import (
    SensitivityField,
    max_sensitivity,
    total_influence,
    discrete_derivative,
    influence_p,
    laplacian,
    sensitivity_field,
    total_influence_p,
    variance_p,
)
from .operators import BiPoly, collapse_partition, diag_line, noise, symmetrize, symmetrize_m
from .orthopoly import UniPoly, bernstein_markov_bound, chebyshev, jacobi, klurman_bound, klurman_family, sup_norm
from .report import BoundReport
from .symmetric import (
    LevelProfile,
    from_univariate,
    symmetric_bound_report,
    symmetric_delta_at_one,
    symmetric_total_influence,
    to_univariate,
)

__version__ = "0.1.0"
