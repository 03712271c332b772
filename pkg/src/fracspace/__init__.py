"""Fractional integral calculus on finite discrete metric measure spaces.

Builds spaces with upper-doubling dominating functions, enumerates canonical
ball families, and provides fractional integral operators, commutators,
oscillation norms, maximal operators, and seeded verification experiments.
"""
from .errors import (
    ConfigInfeasible,
    CoverGuaranteeFailed,
    DegenerateBall,
    DominationDegenerate,
    FamilyTooLarge,
    FracspaceError,
    InputFormatError,
    InvalidDominatingSpec,
    InvalidField,
    KTooLarge,
    LambdaAtZero,
    LambdaNotMonotone,
    MetricViolation,
    NonpositiveWeight,
    ZeroRbmo,
)
from .geometry import (
    Ball,
    BallPair,
    canonical_ball_family,
    dilate,
    family_index,
    greedy_disjoint_cover,
    is_doubling,
    k_coefficient,
    make_ball,
    shell_count,
    smallest_doubling_dilate,
)
from .harness import (
    ExperimentConfig,
    bound_experiment_I,
    bound_experiment_commutator,
    bound_experiment_multilinear,
    cover_check,
    domination_term_count,
    exact_suite,
    generate_test_functions,
    k_properties_suite,
    lemma_mean_zero_check,
    log_distance_field,
    make_space,
    pointwise_domination_check,
    strong_type_check,
)
from .io import export_kernel, import_kernel, load_function, load_space, save_function, save_space
from .maximal import (
    MaximalConfig,
    doubling_maximal,
    fractional_maximal,
    lp_norm,
    sharp_maximal,
    weak_type_check,
)
from .operators import (
    FractionalKernel,
    IndexSubset,
    apply_fractional_integral,
    check_kernel_regularity,
    check_kernel_size,
    commutator,
    kernel_from_values,
    multilinear_commutator,
    nested_commutator,
    sigma_subsets,
    standard_kernel,
    verify_product_expansion,
)
from .rbmo import (
    RbmoEstimate,
    john_nirenberg_check,
    mean_on_ball,
    rbmo_norm,
    rbmo_norm_assignment,
    rho_independence,
    telescoping_check,
    weighted_median,
)
from .report import VerificationReport
from .space import (
    PowerLaw,
    Space,
    TableLaw,
    build_space,
    check_lambda_compatibility,
    check_upper_doubling,
    estimate_geometric_doubling,
    lambda_eval,
)

__version__ = "0.1.0"
