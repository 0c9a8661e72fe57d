"""Estimation problems from YAML configuration files.

The schema (documented in full in the CLI module and README):

.. code-block:: yaml

    problem:
      target:                  # or sampling; any density block
        kind: uniform          # uniform | piecewise-uniform | truncated-normal
        low: 0.0
        high: 0.5
      sampling:
        kind: piecewise-uniform
        intervals: [[0.0, 2.0]]
        # weights: [1.0]       # optional, default proportional to length
      evaluation:
        pieces:                # step function, [lo, hi, value] per piece
          - [0.0, 0.25, -1.0]
          - [0.25, 2.0, 1.0]
      pruning:
        intervals: [[0.0, 0.5]]
        # c: 0.25              # optional override of the analytic mass

Truncated-normal blocks take ``lower``, ``upper``, ``mean``, ``stddev``.
"""

import yaml

from .densities import (
    EstimationProblem,
    EvaluationFunction,
    IntervalUnion,
    PiecewiseUniform,
    PruningSet,
    TruncatedNormal,
)

__all__ = ["build_density", "build_problem", "load_problem"]


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise ValueError(f"{context} block is missing required key '{key}'")
    return mapping[key]


def build_density(block: dict, context: str = "density"):
    """Density object from one configuration block."""
    if not isinstance(block, dict):
        raise ValueError(f"{context} block must be a mapping")
    kind = _require(block, "kind", context)
    if kind == "uniform":
        return PiecewiseUniform.uniform(
            float(_require(block, "low", context)),
            float(_require(block, "high", context)),
        )
    if kind == "piecewise-uniform":
        return PiecewiseUniform(
            _require(block, "intervals", context), block.get("weights")
        )
    if kind == "truncated-normal":
        return TruncatedNormal(
            float(_require(block, "lower", context)),
            float(_require(block, "upper", context)),
            float(_require(block, "mean", context)),
            float(_require(block, "stddev", context)),
        )
    raise ValueError(
        f"{context}: unknown density kind '{kind}' "
        "(expected uniform, piecewise-uniform, or truncated-normal)"
    )


def build_problem(doc: dict) -> EstimationProblem:
    """EstimationProblem from a parsed configuration document."""
    if not isinstance(doc, dict) or "problem" not in doc:
        raise ValueError("configuration must contain a top-level 'problem' mapping")
    spec = doc["problem"]
    target = build_density(_require(spec, "target", "problem"), "target")
    sampling = build_density(_require(spec, "sampling", "problem"), "sampling")
    eval_block = _require(spec, "evaluation", "problem")
    pieces = _require(eval_block, "pieces", "evaluation")
    evaluation = EvaluationFunction.piecewise_constant(pieces)
    prune_block = _require(spec, "pruning", "problem")
    intervals = IntervalUnion(_require(prune_block, "intervals", "pruning"))
    if "c" in prune_block:
        pruning = PruningSet(intervals.contains, float(prune_block["c"]), intervals)
    else:
        pruning = PruningSet.from_intervals(intervals, sampling)
    return EstimationProblem(target, sampling, evaluation, pruning)


def load_problem(path) -> EstimationProblem:
    """Parse a YAML file and build the estimation problem it describes."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = yaml.safe_load(fh)
    return build_problem(doc)
