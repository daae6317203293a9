"""Statevector simulation of Grover search and quantum period finding,
with Fisher-information and Fubini-Study geometry of the algorithm paths."""

from .geometry import (
    FisherSample,
    GeodesicState,
    UnitarityReport,
    action,
    fisher_discrete,
    fubini_study_distance,
    geodesic_residual,
    geodesic_residual_profile,
    input_information,
    integrate_geodesic,
    unitarity_identity_check,
)
from .grover import (
    GroverInstance,
    RecursionState,
    analytic_path,
    analytic_trajectory,
    grover_step,
    marked_mass_after,
    optimal_iterations,
    phi_of_step,
    recursion_step,
    run_grover,
)
from .paths import ProbabilityPath
from .period import (
    DEFAULT_MEMORY_CAP,
    GROVER_ADIABATIC,
    SHOR,
    ComparisonReport,
    FactorResult,
    MethodReport,
    PeriodInstance,
    PeriodResult,
    build_register,
    classify_modulus,
    compare_methods,
    continued_fraction_denominator,
    default_register_size,
    factor,
    grover_period,
    marked_arguments,
    modpow,
    order_bruteforce,
    period_oracle_predicate,
    shor_period,
    shor_project,
    shor_sample,
)
from .states import (
    ResourceLimitError,
    StateVector,
    basis_state,
    invert_about_average,
    measure_register,
    new_uniform,
    phase_flip,
    probabilities,
    qft,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "DEFAULT_MEMORY_CAP",
    "FactorResult",
    "FisherSample",
    "GROVER_ADIABATIC",
    "GeodesicState",
    "GroverInstance",
    "MethodReport",
    "PeriodInstance",
    "PeriodResult",
    "ProbabilityPath",
    "RecursionState",
    "ResourceLimitError",
    "SHOR",
    "StateVector",
    "UnitarityReport",
    "action",
    "analytic_path",
    "analytic_trajectory",
    "basis_state",
    "build_register",
    "classify_modulus",
    "compare_methods",
    "continued_fraction_denominator",
    "default_register_size",
    "factor",
    "fisher_discrete",
    "fubini_study_distance",
    "geodesic_residual",
    "geodesic_residual_profile",
    "grover_period",
    "grover_step",
    "input_information",
    "integrate_geodesic",
    "invert_about_average",
    "marked_arguments",
    "marked_mass_after",
    "measure_register",
    "modpow",
    "new_uniform",
    "optimal_iterations",
    "order_bruteforce",
    "period_oracle_predicate",
    "phase_flip",
    "phi_of_step",
    "probabilities",
    "qft",
    "recursion_step",
    "run_grover",
    "shor_period",
    "shor_project",
    "shor_sample",
    "unitarity_identity_check",
]
