"""Monte Carlo harness: trial simulation, sweeps, and table emission.

Reproduces the quantitative pictures at desk scale: variance/MSE sweeps
of the two-uniform example across (F_max, theta, n), Hoeffding-bound
width and coverage sweeps, and a treatment-policy example over a fully
declared synthetic return surface (its numbers characterize the
surrogate itself, not any real system).

Reproducibility contract: every sweep derives one sub-seed per grid
point from the master seed, and each point's trials are generated in
fixed-size chunks of 4096 whose counter-based streams are keyed by
(point seed, chunk index). Statistics are reduced in trial order, so a
rerun with the same flags yields byte-identical output, and a future
parallel runner could own one chunk per worker without changing any
number.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from ._kernels import batch_estimates
from .densities import (
    EstimationProblem,
    EvaluationFunction,
    PiecewiseUniform,
    PruningSet,
    TruncatedNormal,
)
from .estimators import ControlVariate
from .moments import MomentInputs, MomentReport, illustrative_params, moment_report, rho

__all__ = [
    "CHUNK_TRIALS",
    "SimulationResult",
    "TrialStats",
    "SweepRow",
    "BoundsSweepRow",
    "CoverageRow",
    "MomentsRow",
    "SyntheticReturnSurface",
    "illustrative_problem",
    "evaluation_sampling_mean",
    "treatment_problem",
    "treatment_ground_truth",
    "treatment_sampling_mean",
    "simulate_estimates",
    "summarize_trials",
    "run_trials",
    "analytic_reports",
    "sweep_illustrative",
    "sweep_bounds",
    "coverage_experiment",
    "sweep_treatment_surrogate",
    "render",
    "emit",
]

CHUNK_TRIALS = 4096


def derive_seed(master_seed: int, index: int) -> int:
    """Per-grid-point sub-seed, a pure function of (master seed, index)."""
    ss = np.random.SeedSequence([int(master_seed), int(index)])
    return int(ss.generate_state(1, np.uint64)[0])


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    key = np.array([seed, chunk_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


# ---------------------------------------------------------------------------
# Built-in problems


def illustrative_problem(f_max: float, theta: float = 0.0) -> EstimationProblem:
    """Two-uniform example: target U[0, f_max], sampling U[0, 2].

    The evaluation is theta - 1 below f_max/2 and theta + 1 from f_max/2
    up, so the true value is theta for every f_max; the pruning set is
    the target support, giving c = f_max/2 and conditional term variance
    v = 4/f_max^2.
    """
    if not 0.0 < f_max <= 2.0:
        raise ValueError("f_max must lie in (0, 2]")
    target = PiecewiseUniform.uniform(0.0, f_max)
    sampling = PiecewiseUniform.uniform(0.0, 2.0)
    evaluation = EvaluationFunction.piecewise_constant(
        [(0.0, f_max / 2.0, theta - 1.0), (f_max / 2.0, 2.0, theta + 1.0)]
    )
    pruning = PruningSet.from_intervals([(0.0, f_max)], sampling)
    return EstimationProblem(target, sampling, evaluation, pruning)


def evaluation_sampling_mean(problem: EstimationProblem) -> float:
    """E_g[h] for a step evaluation, the natural constant control variate."""
    pieces = problem.evaluation.pieces
    if pieces is None:
        raise TypeError("sampling mean needs a piecewise-constant evaluation")
    return math.fsum(
        value * problem.sampling.interval_mass([(lo, hi)]) for lo, hi, value in pieces
    )


@dataclass(frozen=True)
class SyntheticReturnSurface:
    """Fully declared return surface for the treatment-policy example.

    The expected return given policy parameters (CR, CF) is

        base(CR) + tilt(CF)
        base(CR) = base_level + base_gain * (1 - ((cr_high - CR)/span)^2)
        tilt(CF) = tilt_amplitude * (CF - cf_mid) / cf_half_width

    so returns improve smoothly toward CR = cr_high, and CF carries a
    small mean-zero linear effect. A day's observed return adds uniform
    noise of half-width ``noise_scale``. CF is drawn uniformly over
    [cf_low, cf_high] under both the target and sampling policies, so it
    integrates out of the estimand: the marginal evaluation of CR is
    base(CR), and the CF and noise terms only add a constant
    ``extra_variance`` to the per-sample conditional variance.
    """

    cr_low: float = 8.5
    cr_high: float = 11.0
    cf_low: float = 10.0
    cf_high: float = 15.0
    base_level: float = 0.85
    base_gain: float = 0.06
    tilt_amplitude: float = 0.01
    noise_scale: float = 0.03

    def marginal_return(self, cr) -> np.ndarray:
        cr = np.asarray(cr, dtype=float)
        span = self.cr_high - self.cr_low
        rel = (self.cr_high - cr) / span
        return self.base_level + self.base_gain * (1.0 - rel * rel)

    def expected_return(self, cr, cf) -> np.ndarray:
        cf = np.asarray(cf, dtype=float)
        cf_mid = 0.5 * (self.cf_low + self.cf_high)
        cf_half = 0.5 * (self.cf_high - self.cf_low)
        tilt = self.tilt_amplitude * (cf - cf_mid) / cf_half
        return self.marginal_return(cr) + tilt

    def observe(self, rng: np.random.Generator, cr: np.ndarray) -> np.ndarray:
        """Noisy per-day returns; draw order (CF, noise) is fixed."""
        cf = rng.uniform(self.cf_low, self.cf_high, size=cr.shape)
        eps = rng.uniform(-self.noise_scale, self.noise_scale, size=cr.shape)
        return self.expected_return(cr, cf) + eps

    @property
    def extra_variance(self) -> float:
        """Var(tilt) + Var(noise); both uniform, so amplitude^2 / 3 each."""
        return (self.tilt_amplitude**2 + self.noise_scale**2) / 3.0

    @property
    def return_bounds(self) -> tuple[float, float]:
        """Deterministic bounds on any observed return."""
        slack = self.tilt_amplitude + self.noise_scale
        return (self.base_level - slack, self.base_level + self.base_gain + slack)


def treatment_problem(
    cr_min: float, surface: SyntheticReturnSurface | None = None
) -> EstimationProblem:
    """Surrogate treatment study: uniform sampling, truncated-normal target.

    The sampling policy draws CR uniformly over [8.5, 11]; the target
    policy draws from a normal with mean 11 and standard deviation
    11 - cr_min truncated to [cr_min, 11]. Pruning to the target support
    gives c = (11 - cr_min)/2.5 exactly.
    """
    surface = surface or SyntheticReturnSurface()
    lo, hi = surface.cr_low, surface.cr_high
    if not lo <= cr_min < hi:
        raise ValueError(f"cr_min must lie in [{lo}, {hi})")
    sampling = PiecewiseUniform.uniform(lo, hi)
    target = TruncatedNormal(cr_min, hi, mean=hi, stddev=hi - cr_min)
    evaluation = EvaluationFunction(
        surface.marginal_return,
        [(lo, hi)],
        surface.base_level,
        surface.base_level + surface.base_gain,
    )
    pruning = PruningSet.from_intervals([(cr_min, hi)], sampling)
    return EstimationProblem(target, sampling, evaluation, pruning)


_QUAD_PANELS = 100_000


def treatment_sampling_mean(surface: SyntheticReturnSurface) -> float:
    """Expected return under the sampling policy (control variate value)."""
    xs = np.linspace(surface.cr_low, surface.cr_high, _QUAD_PANELS + 1)
    dens = 1.0 / (surface.cr_high - surface.cr_low)
    return float(simpson(dens * surface.marginal_return(xs), x=xs))


def treatment_ground_truth(
    problem: EstimationProblem, surface: SyntheticReturnSurface, t: float = 0.0
) -> tuple[float, float]:
    """(theta, v) for the surrogate by deterministic quadrature.

    theta is the expected return under the target policy. v is the
    variance of one centered term f(X)/g(X) (R - t) given X in C, where
    the observed return R adds the surface's CF tilt and day noise to
    the marginal return; their mean-zero variance enters as
    E[w^2 | C] * extra_variance.
    """
    lo = problem.target.lower
    hi = problem.target.upper
    xs = np.linspace(lo, hi, _QUAD_PANELS + 1)
    fv = problem.target.pdf(xs)
    gv = problem.sampling.pdf(xs)
    base = surface.marginal_return(xs)
    theta = float(simpson(fv * base, x=xs))
    ratio = fv * fv / gv
    second = float(simpson(ratio * (base - t) ** 2, x=xs))
    weight_sq = float(simpson(ratio, x=xs))
    c = problem.c
    first = (theta - t) / c
    v = second / c + (weight_sq / c) * surface.extra_variance - first * first
    return theta, max(v, 0.0)


# ---------------------------------------------------------------------------
# Trial simulation and summaries


@dataclass(frozen=True)
class SimulationResult:
    """Per-trial estimator values over one grid point's Monte Carlo run."""

    is_values: np.ndarray
    us_values: np.ndarray
    wis_values: np.ndarray
    k: np.ndarray
    wis_defined: np.ndarray

    @property
    def us_defined(self) -> np.ndarray:
        return self.k > 0


def simulate_estimates(
    problem: EstimationProblem,
    n: int,
    trials: int,
    seed: int,
    t: float = 0.0,
    surface: SyntheticReturnSurface | None = None,
) -> SimulationResult:
    """All three estimators over ``trials`` independent batches of size n.

    When a return surface is given, the deterministic evaluation is
    replaced by its noisy observations (the surrogate-study path);
    weights and pruning membership still come from the problem.
    """
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be positive")
    parts = []
    n_chunks = -(-trials // CHUNK_TRIALS)
    for chunk in range(n_chunks):
        rows = min(CHUNK_TRIALS, trials - chunk * CHUNK_TRIALS)
        rng = _chunk_rng(seed, chunk)
        x = problem.sampling.sample(rng, (rows, n))
        w, hv, in_c = problem.batch_terms(x)
        if surface is not None:
            hv = surface.observe(rng, x)
        parts.append(batch_estimates(w, hv, in_c, problem.c, t))
    cols = [np.concatenate([p[i] for p in parts]) for i in range(5)]
    return SimulationResult(*cols)


@dataclass(frozen=True)
class TrialStats:
    """Empirical summary of one estimator's trial values.

    The ``cond_*`` fields restrict to trials whose batch put at least
    one sample in C (the k > 0 conditioning event, shared by all
    estimators); ``undefined_rate`` counts this estimator's own
    convention substitutions. Every statistic carries its Monte Carlo
    standard error.
    """

    label: str
    trials: int
    mean: float
    variance: float
    mse: float
    se_mean: float
    se_variance: float
    se_mse: float
    positive_trials: int
    cond_mean: float
    cond_variance: float
    cond_mse: float
    cond_se_mean: float
    cond_se_variance: float
    cond_se_mse: float
    undefined_rate: float
    se_undefined_rate: float

    def to_record(self) -> dict:
        return dict(self.__dict__)


def _moment_block(values: np.ndarray, theta: float) -> tuple[float, ...]:
    count = values.size
    if count < 2:
        only = float(values[0]) if count == 1 else math.nan
        return only, math.nan, (only - theta) ** 2 if count else math.nan, *(math.nan,) * 3
    mean = float(values.mean())
    centered = values - mean
    variance = float(centered.dot(centered) / (count - 1))
    fourth = float(np.mean(centered**4))
    sq_err = (values - theta) ** 2
    mse = float(sq_err.mean())
    se_mean = math.sqrt(variance / count)
    se_variance = math.sqrt(max(fourth - variance * variance, 0.0) / count)
    se_mse = float(sq_err.std(ddof=1)) / math.sqrt(count)
    return mean, variance, mse, se_mean, se_variance, se_mse


def summarize_trials(
    label: str,
    values: np.ndarray,
    theta: float,
    defined: np.ndarray,
    positive: np.ndarray,
) -> TrialStats:
    """Mean/variance/MSE with standard errors, plus the k > 0 restriction."""
    values = np.asarray(values, dtype=float)
    trials = values.size
    uncond = _moment_block(values, theta)
    cond = _moment_block(values[positive], theta)
    p_undef = float(1.0 - np.mean(defined))
    se_undef = math.sqrt(max(p_undef * (1.0 - p_undef), 0.0) / trials)
    return TrialStats(
        label,
        trials,
        *uncond,
        int(np.count_nonzero(positive)),
        *cond,
        p_undef,
        se_undef,
    )


def run_trials(
    problem: EstimationProblem,
    n: int,
    trials: int,
    theta_true: float,
    cv: ControlVariate = ControlVariate(0.0),
    seed: int = 0,
    surface: SyntheticReturnSurface | None = None,
) -> dict[str, TrialStats]:
    """TrialStats for IS, US, and WIS over independent seeded batches."""
    sim = simulate_estimates(problem, n, trials, seed, t=cv.t, surface=surface)
    positive = sim.us_defined
    all_defined = np.ones(trials, dtype=bool)
    return {
        "IS": summarize_trials("IS", sim.is_values, theta_true, all_defined, positive),
        "US": summarize_trials("US", sim.us_values, theta_true, positive, positive),
        "WIS": summarize_trials(
            "WIS", sim.wis_values, theta_true, sim.wis_defined, positive
        ),
    }


# ---------------------------------------------------------------------------
# Analytic-vs-empirical sweep rows


def _shift_report(report: MomentReport, t: float, theta: float) -> MomentReport:
    """Re-center an IS report computed on h - t back to the h scale."""
    mean = report.mean + t
    bias = mean - theta
    return MomentReport(
        report.estimator, report.regime, mean, bias, report.variance,
        report.variance + bias * bias,
    )


def analytic_reports(
    n: int, c: float, v: float, theta: float, t: float = 0.0
) -> dict[str, MomentReport]:
    """Closed-form reports for both estimators in both averaged regimes.

    ``v`` must already be the conditional variance of the centered term
    w (h - t). The IS cells follow the catalog at the shifted value
    theta - t and are then translated back by t; the US cells keep the
    full theta because the k = 0 convention pins the estimator to 0, not
    to t, which feeds theta (not theta - t) into the unconditional
    variance and bias.
    """
    us_inputs = MomentInputs(n, c, v, theta)
    is_inputs = MomentInputs(n, c, v, theta - t)
    return {
        "is_unconditional": _shift_report(
            moment_report("IS", "unconditional", is_inputs), t, theta
        ),
        "is_positive": _shift_report(
            moment_report("IS", "conditioned-positive", is_inputs), t, theta
        ),
        "us_unconditional": moment_report("US", "unconditional", us_inputs),
        "us_positive": moment_report("US", "conditioned-positive", us_inputs),
    }


@dataclass(frozen=True)
class SweepRow:
    """One grid point: coordinates, analytic cells, empirical summaries."""

    coord_name: str
    coord: float
    theta: float
    n: int
    c: float
    v: float
    t: float
    seed: int
    analytic: dict[str, MomentReport]
    empirical: dict[str, TrialStats]

    def record(self) -> dict:
        a, e = self.analytic, self.empirical
        out = {
            self.coord_name: self.coord,
            "theta": self.theta,
            "n": self.n,
            "c": self.c,
            "v": self.v,
            "analytic_is_var_u": a["is_unconditional"].variance,
            "analytic_is_var_c": a["is_positive"].variance,
            "analytic_us_var_u": a["us_unconditional"].variance,
            "analytic_us_var_c": a["us_positive"].variance,
            "analytic_us_mse_u": a["us_unconditional"].mse,
        }
        for label in ("is", "us", "wis"):
            stats = e[label.upper()]
            out[f"emp_{label}_mean"] = stats.mean
            out[f"emp_{label}_var"] = stats.variance
            out[f"emp_{label}_mse"] = stats.mse
        out["undefined_rate"] = e["US"].undefined_rate
        out["seed"] = self.seed
        return out

    def to_record(self) -> dict:
        return {
            self.coord_name: self.coord,
            "theta": self.theta,
            "n": self.n,
            "c": self.c,
            "v": self.v,
            "t": self.t,
            "seed": self.seed,
            "analytic": {
                key: dict(report.__dict__) for key, report in self.analytic.items()
            },
            "empirical": {
                key: stats.to_record() for key, stats in self.empirical.items()
            },
        }


def sweep_illustrative(
    f_max_grid,
    theta_grid,
    n_grid,
    trials: int,
    seed: int,
    cv_mode: str = "none",
) -> list[SweepRow]:
    """One SweepRow per (f_max, theta, n) grid point.

    ``cv_mode`` is ``none``, ``value:<real>``, or ``sampling-mean``
    (E_g[h], recomputed per point). The constant shift leaves the
    conditional term variance unchanged here because the weight is
    constant on C, so the analytic columns reuse v = 4/f_max^2.
    """
    f_max_grid, theta_grid, n_grid = list(f_max_grid), list(theta_grid), list(n_grid)
    if not (f_max_grid and theta_grid and n_grid):
        raise ValueError("grids must be nonempty")
    rows = []
    index = 0
    for f_max in f_max_grid:
        for theta in theta_grid:
            problem = illustrative_problem(f_max, theta)
            c, v = illustrative_params(f_max, theta)
            t = _resolve_cv(cv_mode, problem)
            for n in n_grid:
                point_seed = derive_seed(seed, index)
                index += 1
                analytic = analytic_reports(n, c, v, theta, t)
                empirical = run_trials(
                    problem, n, trials, theta, ControlVariate(t), point_seed
                )
                rows.append(
                    SweepRow(
                        "f_max", f_max, theta, n, c, v, t, point_seed,
                        analytic, empirical,
                    )
                )
    return rows


def _resolve_cv(cv_mode: str, problem: EstimationProblem) -> float:
    if cv_mode == "none":
        return 0.0
    if cv_mode == "sampling-mean":
        return evaluation_sampling_mean(problem)
    if cv_mode.startswith("value:"):
        return float(cv_mode.split(":", 1)[1])
    raise ValueError("cv must be none, value:<real>, or sampling-mean")


def sweep_treatment_surrogate(
    cr_min_grid,
    n: int = 30,
    trials: int = 200_000,
    cv_mode: str = "none",
    seed: int = 0,
    surface: SyntheticReturnSurface | None = None,
) -> list[SweepRow]:
    """One SweepRow per cr_min under the synthetic return surface.

    Ground truth theta and the conditional term variance come from
    deterministic quadrature, so the analytic columns are exact for the
    surrogate itself (they describe no external system).
    ``cv_mode = sampling-mean`` uses the expected return under the
    sampling policy as the control variate.
    """
    cr_min_grid = list(cr_min_grid)
    if not cr_min_grid:
        raise ValueError("cr_min grid must be nonempty")
    surface = surface or SyntheticReturnSurface()
    rows = []
    for index, cr_min in enumerate(cr_min_grid):
        problem = treatment_problem(cr_min, surface)
        if cv_mode == "sampling-mean":
            t = treatment_sampling_mean(surface)
        elif cv_mode == "none":
            t = 0.0
        elif cv_mode.startswith("value:"):
            t = float(cv_mode.split(":", 1)[1])
        else:
            raise ValueError("cv must be none, value:<real>, or sampling-mean")
        theta, _ = treatment_ground_truth(problem, surface, t=0.0)
        _, v_centered = treatment_ground_truth(problem, surface, t=t)
        point_seed = derive_seed(seed, index)
        analytic = analytic_reports(n, problem.c, v_centered, theta, t)
        empirical = run_trials(
            problem, n, trials, theta, ControlVariate(t), point_seed, surface=surface
        )
        rows.append(
            SweepRow(
                "cr_min", cr_min, theta, n, problem.c, v_centered, t, point_seed,
                analytic, empirical,
            )
        )
    return rows


# ---------------------------------------------------------------------------
# Bound sweeps


@dataclass(frozen=True)
class BoundsSweepRow:
    """Mean one-sided bounds at one n, plus how often the pruned bound exists.

    ``delta`` is spent per side (two 1 - delta one-sided bounds), the
    reading under which delta = 1 collapses both bounds onto the point
    estimate; delta/2-per-side intervals are available through the
    bounds module directly.
    """

    n: int
    delta: float
    theta: float
    c: float
    b: float
    mean_is_lower: float
    mean_is_upper: float
    mean_us_lower: float
    mean_us_upper: float
    empirical_rho: float
    analytic_rho: float
    seed: int

    def record(self) -> dict:
        return dict(self.__dict__)

    to_record = record


def _margins(b: float, c: float, delta: float, n: int, k: np.ndarray):
    log_term = math.log(1.0 / delta)
    is_margin = b * math.sqrt(log_term / (2.0 * n))
    k_pos = np.maximum(k, 1)
    us_margin = c * b * np.sqrt(log_term / (2.0 * k_pos))
    return is_margin, us_margin


def sweep_bounds(
    f_max: float,
    n_grid,
    delta: float,
    trials: int,
    seed: int,
    theta: float = 1.0,
) -> list[BoundsSweepRow]:
    """Mean bound locations per n for the two-uniform example."""
    from .bounds import weighted_range

    n_grid = list(n_grid)
    if not n_grid:
        raise ValueError("n grid must be nonempty")
    if not 0.0 < delta <= 1.0:
        raise ValueError("delta must lie in (0, 1]")
    problem = illustrative_problem(f_max, theta)
    b = weighted_range(problem)
    c = problem.c
    rows = []
    for index, n in enumerate(n_grid):
        point_seed = derive_seed(seed, index)
        sim = simulate_estimates(problem, n, trials, point_seed)
        is_margin, us_margin = _margins(b, c, delta, n, sim.k)
        defined = sim.us_defined
        us_values = sim.us_values[defined]
        us_margins = us_margin[defined]
        rows.append(
            BoundsSweepRow(
                n=n,
                delta=delta,
                theta=theta,
                c=c,
                b=b,
                mean_is_lower=float(np.mean(sim.is_values - is_margin)),
                mean_is_upper=float(np.mean(sim.is_values + is_margin)),
                mean_us_lower=float(np.mean(us_values - us_margins)),
                mean_us_upper=float(np.mean(us_values + us_margins)),
                empirical_rho=float(np.mean(defined)),
                analytic_rho=rho(n, c),
                seed=point_seed,
            )
        )
    return rows


@dataclass(frozen=True)
class CoverageRow:
    """One-sided lower-bound coverage of the true value at one n."""

    n: int
    delta: float
    theta: float
    c: float
    b: float
    coverage_is: float
    coverage_us: float
    mean_margin_is: float
    mean_margin_us: float
    margin_ratio: float
    predicted_ratio: float
    mean_k: float
    undefined_rate: float
    seed: int

    def record(self) -> dict:
        return dict(self.__dict__)

    to_record = record


def coverage_experiment(
    f_max: float,
    n_grid,
    delta: float,
    trials: int,
    theta: float = 1.0,
    seed: int = 0,
) -> list[CoverageRow]:
    """Fraction of trials whose 1 - delta lower bound sits at or below theta.

    The pruned estimator's coverage is measured among trials with k > 0,
    the only trials where its bound exists.
    """
    from .bounds import weighted_range

    n_grid = list(n_grid)
    if not n_grid:
        raise ValueError("n grid must be nonempty")
    if not 0.0 < delta < 1.0:
        raise ValueError("delta must lie in (0, 1)")
    problem = illustrative_problem(f_max, theta)
    b = weighted_range(problem)
    c = problem.c
    rows = []
    for index, n in enumerate(n_grid):
        point_seed = derive_seed(seed, index)
        sim = simulate_estimates(problem, n, trials, point_seed)
        is_margin, us_margin = _margins(b, c, delta, n, sim.k)
        defined = sim.us_defined
        cover_is = float(np.mean(sim.is_values - is_margin <= theta))
        cover_us = float(
            np.mean((sim.us_values - us_margin)[defined] <= theta)
        )
        mean_k = float(sim.k.mean())
        mean_margin_us = float(us_margin[defined].mean())
        rows.append(
            CoverageRow(
                n=n,
                delta=delta,
                theta=theta,
                c=c,
                b=b,
                coverage_is=cover_is,
                coverage_us=cover_us,
                mean_margin_is=is_margin,
                mean_margin_us=mean_margin_us,
                margin_ratio=mean_margin_us / is_margin,
                predicted_ratio=c * math.sqrt(n / mean_k),
                mean_k=mean_k,
                undefined_rate=float(1.0 - np.mean(defined)),
                seed=point_seed,
            )
        )
    return rows


@dataclass(frozen=True)
class MomentsRow:
    """One analytic catalog cell, for the table-printing command."""

    estimator: str
    regime: str
    mean: float
    bias: float
    variance: float | None
    mse: float | None

    def record(self) -> dict:
        return dict(self.__dict__)

    to_record = record


# ---------------------------------------------------------------------------
# Emission


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def render(rows, format: str) -> str:
    """Deterministic CSV or JSON text for a list of row objects."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to emit")
    if format == "csv":
        records = [row.record() for row in rows]
        header = list(records[0].keys())
        for rec in records:
            if list(rec.keys()) != header:
                raise ValueError("rows disagree on columns")
        lines = [",".join(header)]
        lines += [",".join(_format_cell(rec[key]) for key in header) for rec in records]
        return "\n".join(lines) + "\n"
    if format == "json":
        return json.dumps([row.to_record() for row in rows], indent=2) + "\n"
    raise ValueError("format must be csv or json")


def emit(rows, format: str, path) -> None:
    """Write rows to ``path``; same rows and format give identical bytes."""
    text = render(rows, format)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
