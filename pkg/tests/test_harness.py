"""Harness tests: spec resolution, standardization, aggregation, CSV."""

import math

import numpy as np
import pytest

from optopt import (
    ALGORITHMS,
    ExperimentSpec,
    KernelSpec,
    get_benchmark,
    run_experiment,
    run_single,
    timing_compare,
    write_raw_csv,
    write_summary_csv,
    read_raw_csv,
)
from optopt.harness import (
    BENCHMARK_KERNELS,
    VALUE_TRANSFORMS,
    StandardizedObjective,
    regret_curve,
    summarize_raw_rows,
)


class TestExperimentSpec:
    def test_defaults(self):
        spec = ExperimentSpec(benchmark="branin")
        assert spec.algorithms == ALGORITHMS
        assert spec.repeats == 50
        assert spec.budget == 150
        assert spec.eta == 0.05

    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentSpec(benchmark="branin", repeats=0)
        with pytest.raises(ValueError):
            ExperimentSpec(benchmark="branin", budget=0)
        with pytest.raises(ValueError):
            ExperimentSpec(benchmark="branin", algorithms=("soo", "nope"))
        with pytest.raises(ValueError):
            ExperimentSpec(benchmark="branin", algorithms=())

    def test_resolve_kernel_table_default(self):
        spec = ExperimentSpec(benchmark="branin")
        k = spec.resolve_kernel(2)
        family, ls = BENCHMARK_KERNELS["branin"]
        assert k.family == family
        assert k.lengthscales == (ls, ls)
        assert k.signal_variance == 1.0

    def test_resolve_kernel_fallback_for_unlisted_name(self):
        spec = ExperimentSpec(benchmark="custom")
        k = spec.resolve_kernel(3)
        assert k.family == "squared_exponential"
        assert k.lengthscales == (0.2, 0.2, 0.2)

    def test_resolve_kernel_explicit_override(self):
        kern = KernelSpec("matern52", (0.4, 0.4), 2.0)
        spec = ExperimentSpec(benchmark="branin", kernel=kern)
        assert spec.resolve_kernel(2) is kern
        with pytest.raises(ValueError):
            spec.resolve_kernel(3)

    def test_resolve_transform_table_and_overrides(self):
        spec = ExperimentSpec(benchmark="hartmann3")
        assert spec.resolve_transform() == VALUE_TRANSFORMS["hartmann3"]
        spec2 = ExperimentSpec(benchmark="hartmann3", value_scale=3.0)
        shift, scale, clip = spec2.resolve_transform()
        assert shift == VALUE_TRANSFORMS["hartmann3"][0]
        assert scale == 3.0
        assert clip == VALUE_TRANSFORMS["hartmann3"][2]

    def test_resolve_transform_unlisted_is_identity(self):
        shift, scale, clip = ExperimentSpec(benchmark="custom").resolve_transform()
        assert (shift, scale) == (0.0, 1.0)
        assert math.isinf(clip)

    def test_resolve_transform_validation(self):
        with pytest.raises(ValueError):
            ExperimentSpec(benchmark="branin", value_scale=0.0).resolve_transform()
        with pytest.raises(ValueError):
            ExperimentSpec(benchmark="branin", value_clip=-1.0).resolve_transform()


class TestStandardizedObjective:
    def test_linear_above_shift(self):
        obj = StandardizedObjective(get_benchmark("branin"), 0.0, 2.0, 1.0)
        assert obj.transform(4.0) == 2.0
        assert obj.transform(0.0) == 0.0

    def test_tanh_clip_below_shift(self):
        obj = StandardizedObjective(get_benchmark("branin"), 0.0, 1.0, 2.0)
        assert obj.transform(-1.0) == pytest.approx(2.0 * math.tanh(-0.5))
        assert obj.transform(-1e9) == pytest.approx(-2.0)

    def test_infinite_clip_is_pure_affine(self):
        obj = StandardizedObjective(get_benchmark("branin"), 5.0, 0.5, math.inf)
        assert obj.transform(-10.0) == -30.0

    def test_strictly_increasing(self):
        # Strict within the clip's working range; far tails saturate
        # at +-clip in double precision, which is the intended floor.
        obj = StandardizedObjective(get_benchmark("branin"), 1.0, 0.7, 2.5)
        ys = np.linspace(-15.0, 15.0, 500)
        ts = np.array([obj.transform(float(y)) for y in ys])
        assert np.all(np.diff(ts) > 0)
        assert obj.transform(-1e6) == pytest.approx(-2.5)

    def test_logs_raw_values(self):
        bench = get_benchmark("branin")
        obj = StandardizedObjective(bench, -6.0, 1.65, 2.5)
        u = np.array([0.5, 0.5])
        out = obj(u)
        assert obj.raw_values == [bench.eval(u)]
        assert out == obj.transform(bench.eval(u))


SMALL = ExperimentSpec(benchmark="branin", repeats=2, budget=15)


class TestRunSingle:
    def test_trace_holds_raw_values(self):
        bench = get_benchmark("branin")
        run = run_single(SMALL, "bamsoo", seed=0)
        for rec in run.trace.records:
            assert rec.f == pytest.approx(bench.eval(np.array(rec.point)), abs=1e-12)
        fp = -math.inf
        for rec in run.trace.records:
            fp = max(fp, rec.f)
            assert rec.f_plus == fp

    def test_deterministic_per_seed(self):
        a = run_single(SMALL, "bamsoo", seed=3)
        b = run_single(SMALL, "bamsoo", seed=3)
        assert a.trace.stable_lines() == b.trace.stable_lines()

    def test_seed_sensitivity(self):
        a = run_single(SMALL, "gpucb", seed=0)
        b = run_single(SMALL, "gpucb", seed=1)
        assert a.trace.stable_lines() != b.trace.stable_lines()

    def test_soo_ignores_seed(self):
        a = run_single(SMALL, "soo", seed=0)
        b = run_single(SMALL, "soo", seed=99)
        assert a.trace.stable_lines() == b.trace.stable_lines()

    def test_gate_log_collection(self):
        run = run_single(SMALL, "bamsoo", seed=0, collect_gate_log=True)
        assert run.gate_log is not None and len(run.gate_log) > 0
        assert run_single(SMALL, "soo", seed=0, collect_gate_log=True).gate_log is None

    def test_unknown_algorithm(self):
        with pytest.raises(ValueError):
            run_single(SMALL, "annealing", seed=0)


class TestRegretCurve:
    def test_carried_forward_and_length(self):
        bench = get_benchmark("branin")
        run = run_single(SMALL, "bamsoo", seed=0)
        curve = regret_curve(bench, run.trace, 15)
        assert curve.shape == (15,)
        assert np.all(np.diff(curve) <= 0.0)

    def test_matches_final_incumbent(self):
        from optopt import log_regret

        bench = get_benchmark("branin")
        run = run_single(SMALL, "bamsoo", seed=1)
        curve = regret_curve(bench, run.trace, 15)
        assert curve[-1] == log_regret(bench, run.trace.final_best_value)

    def test_soo_extra_record_beyond_budget_ignored(self):
        bench = get_benchmark("branin")
        run = run_single(SMALL, "soo", seed=0)
        curve = regret_curve(bench, run.trace, 15)
        assert curve.shape == (15,)


class TestRunExperiment:
    def test_shapes_and_run_counts(self):
        result = run_experiment(SMALL)
        assert set(result.runs) == set(ALGORITHMS)
        assert len(result.runs["soo"]) == 1
        assert len(result.runs["bamsoo"]) == 2
        assert len(result.runs["gpucb"]) == 2
        for c in result.summary.curves.values():
            for arr in (c.mean, c.std, c.median, c.min, c.max):
                assert arr.shape == (15,)
        np.testing.assert_array_equal(result.summary.eval_index, np.arange(1, 16))

    def test_curves_bounded_by_extremes(self):
        result = run_experiment(SMALL)
        for c in result.summary.curves.values():
            assert np.all(c.min <= c.median) and np.all(c.median <= c.max)
            assert np.all(c.min <= c.mean) and np.all(c.mean <= c.max)

    def test_repeats_1_budget_1(self):
        spec = ExperimentSpec(
            benchmark="branin", repeats=1, budget=1, algorithms=("soo", "bamsoo")
        )
        result = run_experiment(spec)
        for c in result.summary.curves.values():
            assert c.mean.shape == (1,)
            assert float(c.std[0]) == 0.0

    def test_jobs_do_not_change_results(self):
        seq = run_experiment(SMALL)
        par = run_experiment(SMALL, jobs=2)
        for a in ALGORITHMS:
            np.testing.assert_array_equal(
                seq.summary.curves[a].mean, par.summary.curves[a].mean
            )
            np.testing.assert_array_equal(
                seq.summary.curves[a].median, par.summary.curves[a].median
            )


class TestCsv:
    def test_raw_round_trip_exact(self, tmp_path):
        result = run_experiment(SMALL)
        path = tmp_path / "raw.csv"
        write_raw_csv(result, path)
        rows = read_raw_csv(path)
        n_expected = sum(
            len(r.trace.records) for runs in result.runs.values() for r in runs
        )
        assert len(rows) == n_expected
        rec = result.runs["bamsoo"][0].trace.records[0]
        row = next(r for r in rows if r["run_id"] == "bamsoo-0000" and r["t"] == 1)
        assert row["f"] == rec.f
        assert (row["x_0"], row["x_1"]) == rec.point

    def test_summary_recompute_matches(self, tmp_path):
        result = run_experiment(SMALL)
        path = tmp_path / "raw.csv"
        write_raw_csv(result, path)
        recomputed = summarize_raw_rows(read_raw_csv(path), "branin", 15)
        for a in ALGORITHMS:
            c = result.summary.curves[a]
            np.testing.assert_allclose(recomputed[a]["mean"], c.mean, atol=1e-12)
            np.testing.assert_allclose(recomputed[a]["std"], c.std, atol=1e-12)
            np.testing.assert_allclose(recomputed[a]["median"], c.median, atol=1e-12)

    def test_summary_csv_shape_and_stability(self, tmp_path):
        result = run_experiment(SMALL)
        p1, p2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
        write_summary_csv(result, p1)
        write_summary_csv(run_experiment(SMALL), p2)
        lines = p1.read_text().splitlines()
        assert lines[0].split(",")[0] == "eval_index"
        assert len(lines) == 1 + 15
        assert len(lines[0].split(",")) == 1 + 3 * len(ALGORITHMS)
        # Wall time lives only in raw.csv; summaries are seed-determined.
        assert p1.read_bytes() == p2.read_bytes()


class TestTiming:
    def test_small_budget_skips_ordering(self):
        spec = ExperimentSpec(benchmark="branin", repeats=1, budget=2)
        report = timing_compare(spec, result=run_experiment(spec))
        assert report.ordering_ok is None
        assert any("skipped" in line for line in report.lines())

    def test_partial_algorithms_skip_ordering(self):
        spec = ExperimentSpec(
            benchmark="branin", repeats=1, budget=20, algorithms=("soo", "bamsoo")
        )
        report = timing_compare(spec, result=run_experiment(spec))
        assert report.ordering_ok is None

    def test_report_lines_have_all_algorithms(self):
        result = run_experiment(SMALL)
        report = timing_compare(SMALL, result=result)
        text = "\n".join(report.lines())
        for a in ALGORITHMS:
            assert a in text
