"""Densities, evaluation functions, pruning sets, and batch plumbing."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from unequal_support.densities import (
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
    draw,
    interval_mass,
    pdf_eval,
)


class TestDensityProtocol:
    def test_all_families_conform(self):
        uniform = PiecewiseUniform.uniform(0.0, 1.0)
        truncated = TruncatedNormal(0.0, 1.0, 1.0, 0.5)
        custom = CustomDensity(
            uniform.pdf, uniform.sample, uniform.contains
        )
        for density in (uniform, truncated, custom):
            assert isinstance(density, Density)

    def test_plain_objects_do_not_conform(self):
        assert not isinstance(object(), Density)


class TestIntervalUnion:
    def test_membership_closed_endpoints(self):
        union = IntervalUnion([(0.0, 1.0), (2.0, 3.0)])
        x = np.array([-0.1, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 3.1])
        expected = [False, True, True, True, False, True, True, False]
        assert union.contains(x).tolist() == expected

    def test_overlap_rejected(self):
        with pytest.raises(ValueError, match="overlap"):
            IntervalUnion([(0.0, 1.0), (0.5, 2.0)])

    def test_degenerate_interval_rejected(self):
        with pytest.raises(ValueError):
            IntervalUnion([(1.0, 1.0)])

    def test_touching_intervals_allowed(self):
        union = IntervalUnion([(0.0, 1.0), (1.0, 2.0)])
        assert union.total_length == 2.0


class TestPiecewiseUniform:
    def test_uniform_pdf_values(self):
        g = PiecewiseUniform.uniform(0.0, 2.0)
        assert pdf_eval(g, 1.0) == 0.5
        assert pdf_eval(g, 2.5) == 0.0

    def test_outside_support_is_zero(self):
        f = PiecewiseUniform.uniform(0.0, 1.0)
        assert pdf_eval(f, 1.5) == 0.0

    def test_full_support_mass_is_one(self):
        d = PiecewiseUniform([(0.0, 1.0), (3.0, 4.0)], weights=[0.7, 0.3])
        assert abs(d.interval_mass([(0.0, 1.0), (3.0, 4.0)]) - 1.0) <= 1e-12

    def test_interval_mass_additive(self):
        d = PiecewiseUniform([(0.0, 2.0)])
        total = d.interval_mass([(0.0, 0.5)]) + d.interval_mass([(0.5, 2.0)])
        assert abs(total - d.interval_mass([(0.0, 2.0)])) <= 1e-12

    def test_interval_mass_illustrative(self):
        g = PiecewiseUniform.uniform(0.0, 2.0)
        assert abs(interval_mass(g, [(0.0, 1.0)]) - 0.5) <= 1e-12
        assert abs(interval_mass(g, [(0.0, 2.0)]) - 1.0) <= 1e-12

    def test_weights_validated(self):
        with pytest.raises(ValueError):
            PiecewiseUniform([(0.0, 1.0), (2.0, 3.0)], weights=[0.7, 0.7])
        with pytest.raises(ValueError):
            PiecewiseUniform([(0.0, 1.0)], weights=[0.5, 0.5])

    def test_weighted_sampling_hits_both_intervals(self):
        d = PiecewiseUniform([(0.0, 1.0), (5.0, 6.0)], weights=[0.25, 0.75])
        rng = np.random.default_rng(1)
        x = d.sample(rng, 40_000)
        frac_high = np.mean(x >= 5.0)
        assert abs(frac_high - 0.75) <= 3.0 * np.sqrt(0.75 * 0.25 / 40_000)

    @settings(max_examples=50, deadline=None)
    @given(
        cuts=st.lists(
            st.floats(-50.0, 50.0, allow_nan=False), min_size=2, max_size=8, unique=True
        ),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_random_union_properties(self, cuts, seed):
        pts = sorted(cuts)
        intervals = [(a, b) for a, b in zip(pts[:-1], pts[1:]) if b - a > 1e-6]
        if not intervals:
            return
        d = PiecewiseUniform(intervals)
        assert abs(d.interval_mass(intervals) - 1.0) <= 1e-12
        rng = np.random.default_rng(seed)
        x = d.sample(rng, 256)
        assert d.contains(x).all()
        assert (d.pdf(x) > 0).all()


class TestTruncatedNormal:
    def test_pdf_against_quadrature_oracle(self):
        lo, hi, mean, sd = 10.375, 11.0, 11.0, 0.625
        d = TruncatedNormal(lo, hi, mean, sd)

        def unnorm(x):
            return np.exp(-0.5 * ((x - mean) / sd) ** 2)

        z, _ = quad(unnorm, lo, hi)
        expected = unnorm(11.0) / z
        assert abs(pdf_eval(d, 11.0) - expected) <= 1e-9 * expected
        assert pdf_eval(d, 11.0) == pytest.approx(1.8699794152218137, rel=1e-12)

    def test_full_mass_is_one(self):
        d = TruncatedNormal(-1.0, 3.0, 0.5, 1.2)
        assert abs(d.interval_mass([(-1.0, 3.0)]) - 1.0) <= 1e-12

    def test_zero_outside(self):
        d = TruncatedNormal(0.0, 1.0, 0.0, 1.0)
        assert pdf_eval(d, -0.5) == 0.0
        assert pdf_eval(d, 1.5) == 0.0

    def test_samples_in_support(self):
        d = TruncatedNormal(10.375, 11.0, 11.0, 0.625)
        rng = np.random.default_rng(3)
        x = d.sample(rng, 10_000)
        assert ((x >= 10.375) & (x <= 11.0)).all()

    def test_interval_mass_additive(self):
        d = TruncatedNormal(0.0, 2.0, 1.0, 0.7)
        parts = d.interval_mass([(0.0, 0.8)]) + d.interval_mass([(0.8, 2.0)])
        assert abs(parts - 1.0) <= 1e-12

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            TruncatedNormal(1.0, 0.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            TruncatedNormal(0.0, 1.0, 0.0, -1.0)


class TestDraw:
    def test_deterministic_per_seed(self):
        g = PiecewiseUniform.uniform(0.0, 2.0)
        a = draw(g, 17, 1000)
        b = draw(g, 17, 1000)
        assert np.array_equal(a.values, b.values)
        assert a.seed == 17 and a.n == 1000

    def test_support_containment(self):
        g = PiecewiseUniform.uniform(0.0, 2.0)
        batch = draw(g, 5, 1000)
        assert ((batch.values >= 0.0) & (batch.values <= 2.0)).all()

    def test_large_sample_mean(self):
        g = PiecewiseUniform.uniform(0.0, 2.0)
        batch = draw(g, 99, 10**6)
        se = (2.0 / np.sqrt(12.0)) / 1000.0
        assert abs(batch.values.mean() - 1.0) <= 3.0 * se

    def test_count_validated(self):
        g = PiecewiseUniform.uniform(0.0, 2.0)
        with pytest.raises(ValueError):
            draw(g, 0, 0)


class TestEvaluationFunction:
    def test_zero_outside_declared_support(self):
        h = EvaluationFunction(lambda x: np.ones_like(x), [(0.0, 1.0)], 0.0, 1.0)
        out = h(np.array([-0.5, 0.5, 1.5]))
        assert out.tolist() == [0.0, 1.0, 0.0]

    def test_piecewise_constant_boundary_takes_right_piece(self):
        h = EvaluationFunction.piecewise_constant([(0.0, 0.5, -1.0), (0.5, 2.0, 1.0)])
        out = h(np.array([0.25, 0.5, 1.0, 2.0, 2.5]))
        assert out.tolist() == [-1.0, 1.0, 1.0, 1.0, 0.0]
        assert h.low == -1.0 and h.high == 1.0

    def test_declared_range_includes_zero(self):
        h = EvaluationFunction.piecewise_constant([(0.0, 1.0, 2.0), (1.0, 2.0, 3.0)])
        assert h.low == 0.0 and h.high == 3.0

    def test_bad_range_rejected(self):
        with pytest.raises(ValueError):
            EvaluationFunction(lambda x: x, [(0.0, 1.0)], 1.0, 0.0)


class TestPruningSet:
    def test_analytic_mass_from_intervals(self):
        g = PiecewiseUniform.uniform(8.5, 11.0)
        prune = PruningSet.from_intervals([(10.375, 11.0)], g)
        assert abs(prune.c - 0.25) <= 1e-12
        assert prune.contains(np.array([10.5]))[0]
        assert not prune.contains(np.array([9.0]))[0]

    def test_mass_bounds_enforced(self):
        with pytest.raises(ValueError):
            PruningSet.from_predicate(lambda x: x > 0, 0.0)
        with pytest.raises(ValueError):
            PruningSet.from_predicate(lambda x: x > 0, 1.5)


class TestEstimationProblem:
    def _problem(self):
        f = PiecewiseUniform.uniform(0.0, 1.0)
        g = PiecewiseUniform.uniform(0.0, 2.0)
        h = EvaluationFunction.piecewise_constant([(0.0, 1.0, 1.0)])
        prune = PruningSet.from_intervals([(0.0, 1.0)], g)
        return EstimationProblem(f, g, h, prune)

    def test_batch_terms_values(self):
        problem = self._problem()
        w, hv, in_c = problem.batch_terms(np.array([0.5, 1.5]))
        assert w.tolist() == [2.0, 0.0]
        assert hv.tolist() == [1.0, 0.0]
        assert in_c.tolist() == [True, False]
        assert problem.c == 0.5

    def test_sample_outside_g_rejected(self):
        problem = self._problem()
        with pytest.raises(SamplingSupportError):
            problem.batch_terms(np.array([0.5, 2.5]))

    def test_pruning_coverage_violation_detected(self):
        f = PiecewiseUniform.uniform(0.0, 1.0)
        g = PiecewiseUniform.uniform(0.0, 2.0)
        h = EvaluationFunction.piecewise_constant([(0.0, 1.0, 1.0)])
        bad = EstimationProblem(f, g, h, PruningSet.from_intervals([(0.0, 0.5)], g))
        with pytest.raises(PruningCoverageError):
            bad.batch_terms(np.array([0.75]))

    def test_custom_density_extension_point(self):
        f = CustomDensity(
            pdf=lambda x: np.where((x >= 0) & (x <= 1), 1.0, 0.0),
            sampler=lambda rng, size: rng.uniform(0.0, 1.0, size),
            contains=lambda x: (x >= 0) & (x <= 1),
        )
        assert pdf_eval(f, 0.5) == 1.0
        with pytest.raises(NotImplementedError):
            f.interval_mass([(0.0, 1.0)])


class TestSampleBatch:
    def test_shape_validated(self):
        with pytest.raises(ValueError):
            SampleBatch(values=np.zeros(3), seed=0, n=4)
        with pytest.raises(ValueError):
            SampleBatch(values=np.zeros(0), seed=0, n=0)
