"""Closed-form moments of the IS and US estimators.

Every cell of the bias/variance catalog is available through
:func:`moment_report` under three conditioning regimes:

* ``unconditional``: over all batches, with the US zero convention in force;
* ``conditioned-positive``: given at least one sample landed in C (k > 0);
* ``conditioned-exact``: given exactly k = kappa samples landed in C
  (mean and bias only; no closed-form variance exists in this regime).

The two scalar building blocks are ``rho``, the probability that a batch
is nonempty after pruning, and ``binom_inv_moment``, the conditional
inverse moment E[1/K | K > 0] for K ~ Binomial(n, c).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

__all__ = [
    "MomentInputs",
    "MomentReport",
    "ESTIMATORS",
    "REGIMES",
    "rho",
    "binom_inv_moment",
    "moment_report",
    "us_beats_is",
    "illustrative_params",
    "property3_margin",
]

ESTIMATORS = ("IS", "US")
REGIMES = ("unconditional", "conditioned-positive", "conditioned-exact")


def _validate_nc(n: int, c: float) -> None:
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ValueError("n must be a positive integer")
    if not 0.0 < c <= 1.0:
        raise ValueError("c must lie in (0, 1]")


@dataclass(frozen=True)
class MomentInputs:
    """Problem constants the closed forms depend on.

    ``v`` is the variance of a single importance-sampling term
    f(X)/g(X) h(X) conditioned on X landing in C. ``kappa`` is only
    meaningful for the conditioned-exact regime.
    """

    n: int
    c: float
    v: float
    theta: float
    kappa: int | None = None

    def __post_init__(self):
        _validate_nc(self.n, self.c)
        if self.v < 0.0:
            raise ValueError("v must be nonnegative")
        if self.kappa is not None and not 1 <= self.kappa <= self.n:
            raise ValueError("kappa must lie in [1, n]")


@dataclass(frozen=True)
class MomentReport:
    """Analytic mean/bias/variance/MSE of one estimator in one regime.

    ``variance`` and ``mse`` are None in the conditioned-exact regime,
    where only the conditional mean has a closed form. Bias and MSE are
    always taken about the true value theta, not about any conditional
    mean.
    """

    estimator: str
    regime: str
    mean: float
    bias: float
    variance: float | None
    mse: float | None


def rho(n: int, c: float) -> float:
    """Probability that at least one of n draws from g lands in C.

    Evaluated as -expm1(n log1p(-c)), which keeps full precision when c
    is small and n is large; the naive 1 - (1-c)^n form is reserved for
    cross-checking in tests.
    """
    _validate_nc(n, c)
    if c == 1.0:
        return 1.0
    if n == 1:
        return c
    return -math.expm1(n * math.log1p(-c))


def binom_inv_moment(n: int, c: float) -> float:
    """E[1/K | K > 0] for K ~ Binomial(n, c).

    No closed form exists; the sum over k = 1..n uses compensated
    summation of pmf(k)/k terms, accurate to the last digit for n up to
    10^4 and exactly 1/n at c = 1 (terms that underflow to zero were
    negligible at double precision anyway).
    """
    _validate_nc(n, c)
    k = np.arange(1, n + 1)
    terms = stats.binom.pmf(k, n, c) / k
    return math.fsum(terms) / rho(n, c)


def moment_report(estimator: str, regime: str, inputs: MomentInputs) -> MomentReport:
    """Closed-form moments for one (estimator, conditioning regime) cell.

    The formulas, with r = rho(n, c) and e = E[1/K | K > 0]:

    ==========  =======================  =============================================
    cell        mean                     variance
    ==========  =======================  =============================================
    IS uncond.  theta                    (c v + theta^2 (1/c - 1)) / n
    IS k>0      theta / r                v c/(n r) + theta^2 (c r(n-1)+r-c n)/(c n r^2)
    IS k=kappa  (kappa/(c n)) theta      (none)
    US uncond.  r theta                  r c^2 v e + theta^2 r (1 - r)
    US k>0      theta                    c^2 v e
    US k=kappa  theta                    (none)
    ==========  =======================  =============================================
    """
    if estimator not in ESTIMATORS:
        raise ValueError(f"estimator must be one of {ESTIMATORS}")
    if regime not in REGIMES:
        raise ValueError(f"regime must be one of {REGIMES}")
    n, c, v, theta = inputs.n, inputs.c, inputs.v, inputs.theta

    if regime == "conditioned-exact":
        if inputs.kappa is None:
            raise ValueError("conditioned-exact regime requires kappa")
        kappa = inputs.kappa
        mean = theta if estimator == "US" else (kappa / (c * n)) * theta
        return MomentReport(estimator, regime, mean, mean - theta, None, None)
    if inputs.kappa is not None:
        raise ValueError("kappa is only meaningful in the conditioned-exact regime")

    r = rho(n, c)
    e_inv = binom_inv_moment(n, c)
    if regime == "unconditional":
        if estimator == "IS":
            mean = theta
            variance = (c * v + theta * theta * (1.0 / c - 1.0)) / n
        else:
            mean = r * theta
            variance = r * c * c * v * e_inv + theta * theta * r * (1.0 - r)
    else:
        if estimator == "IS":
            mean = theta / r
            variance = v * c / (n * r) + theta * theta * (
                c * r * (n - 1) + r - c * n
            ) / (c * n * r * r)
        else:
            mean = theta
            variance = c * c * v * e_inv
    bias = mean - theta
    return MomentReport(estimator, regime, mean, bias, variance, variance + bias * bias)


def us_beats_is(n: int, c: float) -> bool:
    """A-priori test that US has no larger k>0 variance than IS.

    True iff c^2 E[1/K | K > 0] <= c/(n rho), which compares the two
    conditioned-positive variances with the theta-dependent terms
    stripped away; computable before seeing any data.
    """
    return c * c * binom_inv_moment(n, c) <= c / (n * rho(n, c))


def illustrative_params(f_max: float, theta: float = 0.0) -> tuple[float, float]:
    """(c, v) for the two-uniform example with target width f_max.

    Target uniform on [0, f_max], sampling uniform on [0, 2], evaluation
    -1 + theta below f_max/2 and 1 + theta above, pruned to the target
    support. Then c = f_max/2 and v = 4/f_max^2 regardless of theta: the
    conditional term (f/g) h has two equally likely values 2/f_max apart.
    """
    if not 0.0 < f_max <= 2.0:
        raise ValueError("f_max must lie in (0, 2]")
    return f_max / 2.0, 4.0 / (f_max * f_max)


def property3_margin(n: int, c: float) -> float:
    """c rho (n-1) + rho - c n, the theta^2 coefficient's numerator.

    Nonnegative for all valid (n, c); tests assert this, which
    guarantees the conditioned-positive IS variance grows with theta^2.
    """
    r = rho(n, c)
    return c * r * (n - 1) + r - c * n
