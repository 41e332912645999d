"""Property-check suites for the GP confidence machinery.

Three suites, each an executable restatement of a structural guarantee
the optimizers rely on:

- variance-bound: the posterior deviation sigma_T(y) never exceeds the
  kernel's Lipschitz constant times the distance from y to the nearest
  observed point.
- coverage: on functions drawn from the GP prior itself, the fraction
  of BaMSOO runs whose gate-time confidence intervals ever exclude the
  true value stays near eta.
- bn-growth: pooled over instrumented benchmark runs, the gate-time
  confidence width B grows with tree depth, but only sublinearly.

Each suite returns a VerifyReport; the CLI maps reports onto exit codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bamsoo import ConfidenceSchedule, GateRecord, bamsoo_run
from .kernel_gp import (
    KERNEL_FAMILIES,
    KernelSpec,
    gp_extend,
    gp_fit,
    gp_posterior,
    lipschitz_constant,
)
from .soo import SooConfig

VARIANCE_BOUND_RELATIVE_SLACK = 1e-6
COVERAGE_DEFAULT_RUNS = 200
COVERAGE_DEFAULT_BUDGET = 40
COVERAGE_VIOLATION_LIMIT = 0.05 + 0.04  # eta plus binomial slack at 200 runs
BN_GROWTH_MAX_EXPONENT = 0.75


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one suite: counts plus human-readable detail lines."""

    suite: str
    checks: int
    failures: int
    lines: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _random_kernel(rng: np.random.Generator, family: str, dim: int) -> KernelSpec:
    lengthscales = tuple(float(v) for v in np.exp(rng.uniform(np.log(0.05), np.log(1.5), dim)))
    signal_variance = float(np.exp(rng.uniform(np.log(0.25), np.log(4.0))))
    return KernelSpec(family, lengthscales, signal_variance)


def variance_bound_suite(trials: int = 1000, seed: int = 0) -> VerifyReport:
    """sigma_T(y) <= L * min_x ||x - y|| over random datasets and queries.

    For each kernel family, draws ``trials`` (dataset, query) pairs with
    t <= 30 points in up to 6 dimensions and checks the bound with
    1e-6 relative slack.  Values do not matter: the posterior deviation
    depends on the points alone.
    """
    rng = np.random.default_rng(seed)
    failures = 0
    checks = 0
    lines = []
    for family in KERNEL_FAMILIES:
        worst = 0.0
        for _ in range(trials):
            dim = int(rng.integers(1, 7))
            t = int(rng.integers(1, 31))
            kernel = _random_kernel(rng, family, dim)
            points = rng.uniform(size=(t, dim))
            values = rng.standard_normal(t)
            state = gp_fit(kernel, points, values)
            query = rng.uniform(size=dim)
            post = gp_posterior(state, query)
            dist = float(np.min(np.linalg.norm(points - query, axis=1)))
            bound = lipschitz_constant(kernel) * dist
            checks += 1
            if bound > 0:
                worst = max(worst, post.std / bound)
            if post.std > bound * (1.0 + VARIANCE_BOUND_RELATIVE_SLACK):
                failures += 1
        lines.append(f"{family}: {trials} pairs, worst sigma/bound ratio {worst:.6f}")
    return VerifyReport("variance-bound", checks, failures, tuple(lines))


class GpPriorSampler:
    """One lazily materialized draw from a GP prior.

    Every new query point is drawn from the conditional distribution
    given the points materialized so far, so any finite query set has
    exactly the prior's joint law regardless of query order.  Repeated
    queries at the same point return the cached draw, which makes the
    sampler usable both as the objective during a run and as the ground
    truth when auditing that run's confidence intervals afterwards.
    """

    def __init__(self, kernel: KernelSpec, rng: np.random.Generator):
        self.kernel = kernel
        self.rng = rng
        self._state = gp_fit(kernel, [], [])
        self._cache: dict[tuple[float, ...], float] = {}

    def __call__(self, x) -> float:
        key = tuple(float(v) for v in np.atleast_1d(np.asarray(x, dtype=float)))
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        post = gp_posterior(self._state, key)
        value = float(post.mean + post.std * self.rng.standard_normal())
        self._state = gp_extend(self._state, key, value)
        self._cache[key] = value
        return value


def coverage_suite(
    runs: int = COVERAGE_DEFAULT_RUNS,
    eta: float = 0.05,
    budget: int = COVERAGE_DEFAULT_BUDGET,
    seed: int = 0,
    limit: float = COVERAGE_VIOLATION_LIMIT,
) -> VerifyReport:
    """Gate-time confidence intervals cover GP-prior draws as promised.

    Runs 1-D BaMSOO on ``runs`` independent functions sampled from the
    same prior the optimizer assumes, then audits every gate record
    against the sampled truth.  A run fails if any interval excluded the
    true value; the suite fails if the failing fraction exceeds
    ``limit`` (eta plus binomial slack).
    """
    kernel = KernelSpec("squared_exponential", (0.2,), 1.0)
    schedule = ConfidenceSchedule(eta)
    config = SooConfig(budget=budget, dim=1)
    tol = 1e-9
    violating_runs = 0
    gate_count = 0
    for i in range(runs):
        sampler = GpPriorSampler(kernel, np.random.default_rng([seed, i, 1]))
        gate_log: list[GateRecord] = []
        bamsoo_run(sampler, config, schedule, kernel, seed=i, gate_log=gate_log)
        gate_count += len(gate_log)
        for record in gate_log:
            truth = sampler(record.center)
            if truth < record.lower - tol or truth > record.upper + tol:
                violating_runs += 1
                break
    fraction = violating_runs / runs
    ok = fraction <= limit
    lines = (
        f"{runs} prior-sample runs, {gate_count} gate checks, "
        f"{violating_runs} runs with a violated interval (fraction {fraction:.3f}, limit {limit:.3f})",
    )
    return VerifyReport("coverage", runs, 0 if ok else 1, lines)


def bn_growth_suite(
    seeds_per_benchmark: int = 10,
    budget: int = 150,
    seed: int = 0,
    max_exponent: float = BN_GROWTH_MAX_EXPONENT,
) -> VerifyReport:
    """Gate-time B, averaged per tree level, rises and stays sublinear.

    Pools instrumented gate logs from BaMSOO benchmark runs, averages
    B over records at each level, and checks (a) the level averages are
    non-decreasing and (b) a log-log fit of average B against level has
    slope at most ``max_exponent``.  Each run contributes its records up
    to its last true evaluation: once a run stops evaluating, the tree
    keeps splitting bounded cells at essentially constant B, and that
    trailing churn says nothing about how the width scales with depth.
    """
    from .benchmarks import BENCHMARK_NAMES
    from .harness import ExperimentSpec, run_single

    by_level: dict[int, list[float]] = {}
    runs_at_level: dict[int, set[int]] = {}
    run_count = 0
    for bench in BENCHMARK_NAMES:
        spec = ExperimentSpec(benchmark=bench, repeats=seeds_per_benchmark, budget=budget, base_seed=seed)
        for s in range(seed, seed + seeds_per_benchmark):
            single = run_single(spec, "bamsoo", s, collect_gate_log=True)
            run_count += 1
            records = single.gate_log
            evaluate_indices = [i for i, r in enumerate(records) if r.decision == "evaluate"]
            if evaluate_indices:
                records = records[: evaluate_indices[-1] + 1]
            for record in records:
                by_level.setdefault(record.level, []).append(record.b)
                runs_at_level.setdefault(record.level, set()).add(run_count)
    # a per-level average is a cross-run statistic only where several
    # runs actually reached that depth
    min_support = max(3, run_count // 10)
    supported = sorted(h for h in by_level if len(runs_at_level[h]) >= min_support)
    levels = np.array(supported, dtype=float)
    means = np.array([np.mean(by_level[int(h)]) for h in levels])
    failures = 0
    lines = []
    drops = np.nonzero(np.diff(means) < 0)[0]
    if drops.size:
        failures += 1
        lines.append(
            f"level averages dip at h={int(levels[drops[0] + 1])} "
            f"({means[drops[0]]:.4f} -> {means[drops[0] + 1]:.4f})"
        )
    positive = levels > 0
    slope = float(np.polyfit(np.log(levels[positive]), np.log(means[positive]), 1)[0])
    if slope > max_exponent:
        failures += 1
        lines.append(f"log-log slope {slope:.3f} exceeds {max_exponent}")
    lines.append(
        f"{run_count} runs, levels 1..{int(levels.max())}, "
        f"B range {means.min():.3f}..{means.max():.3f}, log-log slope {slope:.3f}"
    )
    return VerifyReport("bn-growth", run_count, failures, tuple(lines))


SUITES = {
    "variance-bound": variance_bound_suite,
    "coverage": coverage_suite,
    "bn-growth": bn_growth_suite,
}
