"""Importance sampling with pruned (unequal) support.

Estimate an expectation under a target distribution from samples drawn
under a different sampling distribution. Alongside ordinary importance
sampling and the weighted (self-normalized) variant, the package
implements an estimator that discards samples outside a chosen pruning
set and rescales by that set's known probability mass, which can cut
variance by orders of magnitude when the target's support is much
smaller than the sampling distribution's.

Modules: ``densities`` (distributions, evaluation functions, pruning
sets), ``estimators`` (the three point estimators), ``moments``
(closed-form bias/variance catalog), ``bounds`` (Hoeffding confidence
bounds), ``experiments`` (seeded Monte Carlo harness and sweeps),
``config`` (YAML problem descriptions), ``cli`` (command line).
"""

from .bounds import (
    BoundRequest,
    BoundResult,
    confidence_interval,
    hoeffding_is,
    hoeffding_us,
    truncate_bound,
    weighted_range,
)
from .densities import (
    ControlVariateCoverageError,
    CustomDensity,
    Density,
    EstimationProblem,
    EvaluationFunction,
    IntervalUnion,
    PiecewiseUniform,
    PruningCoverageError,
    PruningSet,
    SampleBatch,
    SamplingSupportError,
    TruncatedNormal,
    UnequalSupportError,
    draw,
    interval_mass,
    pdf_eval,
)
from .estimators import (
    ControlVariate,
    EstimateResult,
    count_in_c,
    importance_weight,
    is_estimate,
    us_estimate,
    us_estimate_empirical_c,
    wis_estimate,
)
from .experiments import (
    SimulationResult,
    SweepRow,
    SyntheticReturnSurface,
    TrialStats,
    coverage_experiment,
    emit,
    illustrative_problem,
    run_trials,
    simulate_estimates,
    summarize_trials,
    sweep_bounds,
    sweep_illustrative,
    sweep_treatment_surrogate,
    treatment_problem,
)
from .moments import (
    MomentInputs,
    MomentReport,
    binom_inv_moment,
    illustrative_params,
    moment_report,
    property3_margin,
    rho,
    us_beats_is,
)

__version__ = "0.1.0"
