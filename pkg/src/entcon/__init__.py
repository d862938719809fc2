"""Explicit entropy-concentration certificates for constrained allocations.

The package computes, for an allocation of n units to m cells under linear
constraints with tolerances, the sizes n beyond which all but a prescribed
fraction of constraint-satisfying assignments have frequency vectors close
to the maximum-entropy vector (in entropy or in l1 norm), plus the exact
combinatorial machinery needed to verify those certificates at desk scale.
"""

from .constraints import (
    ConstraintError,
    ConstraintSystem,
    SatisfactionReport,
    ToleranceSpec,
    load_problem,
    problem_to_dict,
    row_inf_norm,
    satisfies,
    tolerance_radius,
)
from .counting import (
    LogScalar,
    entropy,
    entropy_gap_report,
    lattice_cube_lower_bound,
    log_factorial,
    multinomial_count,
    realization_bounds_simple,
    realization_bounds_stirling,
    sanov_upper_bound,
    sqrt_composition_sum,
    stirling_theta,
)
from .discretize import CountVector, FrequencyVector, closeness_radii, round_to_counts
from .solver import (
    ConvergenceError,
    InfeasibleError,
    MaxEntSolution,
    SolverError,
    accept_external_solution,
    solve_maxent,
)
from .bounds import (
    BoundReport,
    BoundValidityError,
    JaynesComparison,
    bound_distribution,
    bound_entropy_set,
    bound_entropy_vector,
    bound_norm_set,
    bound_norm_vector,
    bound_uniform,
    chi2_upper_quantile,
    compute_bound,
    entropy_radius,
    jaynes_comparison,
    norm_margin,
    norm_margin_root,
    regularized_gamma_q,
    scan_alpha,
)
from .oracle import (
    EnumerationReport,
    IntegerRow,
    OracleBudgetError,
    concentration_report,
    count_lattice_points,
    count_lattice_points_enum,
    die_mean_lattice_polynomial,
    enumerate_frequency_vectors,
    integer_rows_from_problem,
    verify_lemma_bounds,
)

__version__ = "0.1.0"
