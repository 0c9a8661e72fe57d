"""One-dimensional densities, evaluation functions, and pruning sets.

Two density families are built in: piecewise-uniform (disjoint intervals
with probability weights) and truncated-normal. Both expose analytic
interval masses and inverse-CDF sampling, so draws are deterministic per
seed and masses are exact. Arbitrary densities can be plugged in through
:class:`CustomDensity`, in which case the pruning-set mass must be
supplied by the caller.
"""

from dataclasses import dataclass, field
from typing import Callable, Protocol, Sequence, runtime_checkable

import numpy as np
from scipy.special import ndtr, ndtri

__all__ = [
    "UnequalSupportError",
    "SamplingSupportError",
    "PruningCoverageError",
    "ControlVariateCoverageError",
    "IntervalUnion",
    "Density",
    "PiecewiseUniform",
    "TruncatedNormal",
    "CustomDensity",
    "EvaluationFunction",
    "PruningSet",
    "EstimationProblem",
    "SampleBatch",
    "pdf_eval",
    "draw",
    "interval_mass",
]

_MASS_TOL = 1e-12


class UnequalSupportError(ValueError):
    """Base class for support/configuration violations."""


class SamplingSupportError(UnequalSupportError):
    """A sample claims to come from g but has g(x) = 0."""


class PruningCoverageError(UnequalSupportError):
    """A sample with f(x)h(x) != 0 fell outside the pruning set C.

    Signals a violation of the standing assumption that the pruning set
    covers the joint support of the target density and the evaluation
    function.
    """


class ControlVariateCoverageError(UnequalSupportError):
    """A nonzero control variate requires C to cover all of F.

    Raised when a sample outside C has f(x) != 0 while t != 0; in that
    case restricting the centered sum to C would drop nonzero terms.
    """


class IntervalUnion:
    """Finite union of closed, non-overlapping intervals on the reals.

    Endpoints count as inside (closed convention), so membership agrees
    with a positive pdf on the boundary. Intervals may touch but their
    interiors must be disjoint.
    """

    def __init__(self, intervals: Sequence[Sequence[float]]):
        ivs = sorted((float(a), float(b)) for a, b in intervals)
        if not ivs:
            raise ValueError("at least one interval required")
        for a, b in ivs:
            if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
                raise ValueError(f"bad interval [{a}, {b}]")
        for (_, b0), (a1, _) in zip(ivs, ivs[1:]):
            if a1 < b0:
                raise ValueError("intervals overlap")
        self.lows = np.array([a for a, _ in ivs])
        self.highs = np.array([b for _, b in ivs])

    def __len__(self) -> int:
        return len(self.lows)

    def __iter__(self):
        return iter(zip(self.lows, self.highs))

    @property
    def total_length(self) -> float:
        return float(np.sum(self.highs - self.lows))

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.lows, x, side="right") - 1
        idx_c = np.clip(idx, 0, len(self.lows) - 1)
        return (idx >= 0) & (x <= self.highs[idx_c])

    def overlap_lengths(self, other: "IntervalUnion") -> np.ndarray:
        """Length of other's overlap with each of this union's intervals."""
        out = np.zeros(len(self.lows))
        for a, b in other:
            out += np.maximum(
                0.0, np.minimum(self.highs, b) - np.maximum(self.lows, a)
            )
        return out


@runtime_checkable
class Density(Protocol):
    """Structural interface every density family implements.

    ``pdf`` must be nonnegative and integrate to 1 over the support;
    ``contains`` must agree with pdf > 0 pointwise; ``interval_mass``
    returns the analytic probability of an interval union; ``sample``
    draws i.i.d. points inside the support from a caller-owned
    generator.
    """

    def pdf(self, x) -> np.ndarray: ...

    def contains(self, x) -> np.ndarray: ...

    def sample(self, rng: np.random.Generator, size) -> np.ndarray: ...

    def interval_mass(self, intervals) -> float: ...


def _as_interval_union(intervals) -> IntervalUnion:
    return intervals if isinstance(intervals, IntervalUnion) else IntervalUnion(intervals)


class PiecewiseUniform:
    """Density that is constant on each interval of a disjoint union.

    ``weights[j]`` is the probability mass of interval j (default:
    proportional to length, i.e. uniform over the union). Sampling maps a
    single uniform draw through the piecewise-linear inverse CDF, so the
    draw count per seed is deterministic.
    """

    kind = "piecewise-uniform"

    def __init__(self, intervals, weights: Sequence[float] | None = None):
        self.support = _as_interval_union(intervals)
        lengths = self.support.highs - self.support.lows
        if weights is None:
            w = lengths / lengths.sum()
        else:
            w = np.asarray(weights, dtype=float)
            if w.shape != lengths.shape:
                raise ValueError("one weight per interval required")
            if np.any(w <= 0):
                raise ValueError("weights must be positive")
            if abs(w.sum() - 1.0) > _MASS_TOL:
                raise ValueError("weights must sum to 1")
        self.weights = w
        self.heights = w / lengths
        self._cum = np.concatenate([[0.0], np.cumsum(w)])
        self._cum[-1] = 1.0

    @classmethod
    def uniform(cls, low: float, high: float) -> "PiecewiseUniform":
        return cls([(low, high)])

    def pdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        lo, hi = self.support.lows, self.support.highs
        idx = np.searchsorted(lo, x, side="right") - 1
        idx_c = np.clip(idx, 0, len(lo) - 1)
        inside = (idx >= 0) & (x <= hi[idx_c])
        return np.where(inside, self.heights[idx_c], 0.0)

    def contains(self, x) -> np.ndarray:
        return self.support.contains(x)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        u = rng.uniform(0.0, 1.0, size=size)
        j = np.clip(np.searchsorted(self._cum, u, side="right") - 1, 0, len(self.weights) - 1)
        lo, hi = self.support.lows[j], self.support.highs[j]
        frac = (u - self._cum[j]) / self.weights[j]
        return lo + frac * (hi - lo)

    def interval_mass(self, intervals) -> float:
        query = _as_interval_union(intervals)
        overlap = self.support.overlap_lengths(query)
        return float(np.dot(self.heights, overlap))


class TruncatedNormal:
    """Normal(mean, stddev) truncated to [lower, upper] and renormalized.

    Sampling uses the inverse CDF on the truncated quantile range, so a
    fixed seed always consumes exactly one uniform per draw.
    """

    kind = "truncated-normal"

    def __init__(self, lower: float, upper: float, mean: float, stddev: float):
        if not lower < upper:
            raise ValueError("lower must be < upper")
        if stddev <= 0:
            raise ValueError("stddev must be positive")
        self.lower = float(lower)
        self.upper = float(upper)
        self.mean = float(mean)
        self.stddev = float(stddev)
        self.support = IntervalUnion([(lower, upper)])
        self._cdf_lo = float(ndtr((lower - mean) / stddev))
        self._cdf_hi = float(ndtr((upper - mean) / stddev))
        self._z = self._cdf_hi - self._cdf_lo
        if self._z <= 0:
            raise ValueError("truncation interval has no normal mass")

    def pdf(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        z = (x - self.mean) / self.stddev
        dens = np.exp(-0.5 * z * z) / (self.stddev * np.sqrt(2.0 * np.pi) * self._z)
        return np.where((x >= self.lower) & (x <= self.upper), dens, 0.0)

    def contains(self, x) -> np.ndarray:
        return self.support.contains(x)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        u = rng.uniform(0.0, 1.0, size=size)
        q = self._cdf_lo + u * self._z
        x = self.mean + self.stddev * ndtri(q)
        return np.clip(x, self.lower, self.upper)

    def interval_mass(self, intervals) -> float:
        query = _as_interval_union(intervals)
        total = 0.0
        for a, b in query:
            a_c = max(a, self.lower)
            b_c = min(b, self.upper)
            if a_c < b_c:
                total += float(
                    ndtr((b_c - self.mean) / self.stddev)
                    - ndtr((a_c - self.mean) / self.stddev)
                )
        return total / self._z


class CustomDensity:
    """User-supplied (pdf, sampler, membership) triple.

    No analytic interval masses are available, so pruning-set masses must
    be provided by the caller.
    """

    kind = "custom"

    def __init__(self, pdf: Callable, sampler: Callable, contains: Callable):
        self._pdf = pdf
        self._sampler = sampler
        self._contains = contains

    def pdf(self, x) -> np.ndarray:
        return np.asarray(self._pdf(np.asarray(x, dtype=float)), dtype=float)

    def contains(self, x) -> np.ndarray:
        return np.asarray(self._contains(np.asarray(x, dtype=float)), dtype=bool)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return np.asarray(self._sampler(rng, size), dtype=float)

    def interval_mass(self, intervals) -> float:
        raise NotImplementedError("custom densities have no analytic interval mass")


class EvaluationFunction:
    """Real-valued evaluation map with a declared support and value range.

    Evaluations outside the declared support are exactly zero. ``low`` and
    ``high`` bound every value the function can produce on the sampling
    support, including that zero.
    """

    def __init__(self, fn: Callable, support, low: float, high: float):
        self.fn = fn
        self.support = _as_interval_union(support)
        if low > high:
            raise ValueError("low must be <= high")
        self.low = float(low)
        self.high = float(high)
        self.pieces: tuple | None = None  # set for piecewise-constant maps

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.where(self.support.contains(x), self.fn(x), 0.0)

    @classmethod
    def piecewise_constant(cls, pieces: Sequence[Sequence[float]]) -> "EvaluationFunction":
        """Step function from (lo, hi, value) triples on disjoint intervals."""
        pieces = tuple((float(a), float(b), float(v)) for a, b, v in pieces)
        support = IntervalUnion([(a, b) for a, b, _ in pieces])
        lows = np.array(sorted(a for a, _, _ in pieces))
        order = np.argsort([a for a, _, _ in pieces])
        values = np.array([pieces[i][2] for i in order])

        def fn(x):
            j = np.clip(np.searchsorted(lows, x, side="right") - 1, 0, len(lows) - 1)
            return values[j]

        vals = [v for _, _, v in pieces]
        obj = cls(fn, support, min(0.0, *vals), max(0.0, *vals))
        obj.pieces = pieces
        return obj


@dataclass(frozen=True)
class PruningSet:
    """Indicator of the set C kept by the unequal-support estimator.

    ``c`` is the probability mass of C under the sampling density.
    """

    indicator: Callable
    c: float
    intervals: IntervalUnion | None = None

    def __post_init__(self):
        if not 0.0 < self.c <= 1.0:
            raise ValueError("c must lie in (0, 1]")

    @classmethod
    def from_intervals(cls, intervals, sampling) -> "PruningSet":
        """Interval-described set; c computed analytically under g."""
        union = _as_interval_union(intervals)
        c = sampling.interval_mass(union)
        return cls(union.contains, c, union)

    @classmethod
    def from_predicate(cls, indicator: Callable, c: float) -> "PruningSet":
        return cls(indicator, float(c), None)

    def contains(self, x) -> np.ndarray:
        return np.asarray(self.indicator(np.asarray(x, dtype=float)), dtype=bool)


@dataclass(frozen=True)
class SampleBatch:
    """n i.i.d. draws from the sampling density, tagged with their seed."""

    values: np.ndarray
    seed: int | None
    n: int

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if self.n < 1 or self.values.shape != (self.n,):
            raise ValueError("values must be a length-n vector with n >= 1")


@dataclass(frozen=True)
class EstimationProblem:
    """Target f, sampling g, evaluation h, and pruning set C with mass c.

    The standing assumption is F ∩ H ⊆ C ⊆ G. It cannot be verified for
    arbitrary predicates, so it is spot-checked on every batch that flows
    through the estimators: any sample with f(x)h(x) != 0 outside C
    raises :class:`PruningCoverageError`.
    """

    target: object
    sampling: object
    evaluation: EvaluationFunction
    pruning: PruningSet

    @property
    def c(self) -> float:
        return self.pruning.c

    def batch_terms(self, values: np.ndarray):
        """Per-sample (weight, evaluation, in-C) arrays for a batch.

        Accepts any array shape; trailing axis semantics are up to the
        caller. Raises if a sample is impossible under g or if the
        pruning spot-check fails.
        """
        values = np.asarray(values, dtype=float)
        gv = self.sampling.pdf(values)
        if np.any(gv <= 0.0):
            raise SamplingSupportError(
                "sample has zero density under the sampling distribution"
            )
        fv = self.target.pdf(values)
        w = fv / gv
        hv = self.evaluation(values)
        in_c = self.pruning.contains(values)
        if np.any((fv * hv != 0.0) & ~in_c):
            raise PruningCoverageError(
                "sample with f(x)h(x) != 0 lies outside the pruning set"
            )
        return w, hv, in_c


def pdf_eval(density, x):
    """Density value at x; zero outside the support."""
    out = density.pdf(x)
    return float(out) if np.isscalar(x) else out


def draw(density, seed: int, count: int) -> SampleBatch:
    """Draw ``count`` i.i.d. samples; bit-for-bit reproducible per seed."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    values = density.sample(rng, count)
    return SampleBatch(values=values, seed=seed, n=count)


def interval_mass(density, intervals) -> float:
    """Analytic mass of a disjoint interval union under the density."""
    return density.interval_mass(intervals)
