"""Verifiable level-set metrics for fuzzy sets.

Ground sets live on one of four backends (line intervals, Euclidean point
clouds, finite distance matrices, and their products).  Fuzzy sets are
step functions of nested cuts or piecewise-linear fuzzy numbers.  On top
of those the package computes Hausdorff, d_p, d_inf, endograph, and
sendograph distances exactly, audits the inequalities that relate them,
and assembles family-level compactness diagnostics.
"""

from .config import DEFAULT_TOL, tolerance, use_numba
from .ground import (
    LINE,
    BackendMismatch,
    DomainError,
    EuclideanSpace,
    GroundPoint,
    GroundSet,
    LineSpace,
    MatrixSpace,
    ProductSpace,
    closure_of_interval_list,
    diameter,
    dist,
    dist_to_set,
    euclidean_set,
    line_set,
    matrix_set,
    product_set,
    set_from_json,
    singleton_set,
    union,
)
from .hausdorff import hausdorff, hausdorff_ext, hausdorff_pre, hausdorff_product
from .fuzzy import (
    GraphSet,
    LinearFuzzyNumber,
    StepFuzzySet,
    characteristic,
    discretize_linear,
    endograph,
    fuzzy_from_json,
    fuzzy_to_json,
    make_step,
    product_fuzzy,
    sendograph,
    singleton,
    truncate,
    zero_extend,
)
from .metrics import (
    Kind,
    MetricResult,
    cutwise_profile,
    d_infty,
    d_p,
    h_end,
    h_send,
    inequality_audit,
)
from .fixtures import (
    audit_pack,
    fixture_names,
    growing_support_family,
    shrinking_jump,
    sliding_jump_family,
    spike_family,
    split_top_pair,
    taper_pair,
    uniform_shrink,
)
from .diagnostics import (
    Family,
    FamilyReport,
    compactness_report,
    convergence_report,
    default_alpha_grid,
    default_h_grid,
    dp_tail,
    equi_left_continuity,
    greedy_epsilon_net,
    omega_p,
    shift_subadditivity_check,
    support_union,
    uniform_p_mean_bounded,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "tolerance",
    "use_numba",
    "LINE",
    "BackendMismatch",
    "DomainError",
    "EuclideanSpace",
    "GroundPoint",
    "GroundSet",
    "LineSpace",
    "MatrixSpace",
    "ProductSpace",
    "closure_of_interval_list",
    "diameter",
    "dist",
    "dist_to_set",
    "euclidean_set",
    "line_set",
    "matrix_set",
    "product_set",
    "set_from_json",
    "singleton_set",
    "union",
    "hausdorff",
    "hausdorff_ext",
    "hausdorff_pre",
    "hausdorff_product",
    "GraphSet",
    "LinearFuzzyNumber",
    "StepFuzzySet",
    "characteristic",
    "discretize_linear",
    "endograph",
    "fuzzy_from_json",
    "fuzzy_to_json",
    "make_step",
    "product_fuzzy",
    "sendograph",
    "singleton",
    "truncate",
    "zero_extend",
    "Kind",
    "MetricResult",
    "cutwise_profile",
    "d_infty",
    "d_p",
    "h_end",
    "h_send",
    "inequality_audit",
    "audit_pack",
    "fixture_names",
    "growing_support_family",
    "shrinking_jump",
    "sliding_jump_family",
    "spike_family",
    "split_top_pair",
    "taper_pair",
    "uniform_shrink",
    "Family",
    "FamilyReport",
    "compactness_report",
    "convergence_report",
    "default_alpha_grid",
    "default_h_grid",
    "dp_tail",
    "equi_left_continuity",
    "greedy_epsilon_net",
    "omega_p",
    "shift_subadditivity_check",
    "support_union",
    "uniform_p_mean_bounded",
]
