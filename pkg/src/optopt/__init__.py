"""optopt: tree-partition global optimization with optional GP guidance.

The package bundles three maximizers over the unit box with a shared
trace format, a benchmark suite, and an experiment harness:

- soo_run: deterministic simultaneous optimistic optimization.
- bamsoo_run: SOO with GP confidence bounds gating evaluations.
- gpucb_run: plain GP upper confidence bound search.

See the README for the module map and the command line entry points.
"""

from .errors import (
    DimensionMismatchError,
    DuplicatePointError,
    FactorizationError,
    NonFiniteInputError,
    ObjectiveValueError,
    OptoptError,
    PartitionExhaustedError,
    UnknownBenchmarkError,
)
from .kernel_gp import (
    KERNEL_FAMILIES,
    GpState,
    KernelSpec,
    PosteriorStats,
    cross_kernel,
    gp_extend,
    gp_fit,
    gp_posterior,
    gp_posterior_batch,
    kernel_eval,
    lipschitz_constant,
)
from .partition import Cell, Tree, root_cell, split_cell
from .soo import EvalRecord, RunTrace, SooConfig, hmax, soo_run
from .bamsoo import (
    ConfidenceSchedule,
    GateRecord,
    b_n,
    bamsoo_run,
    write_gate_log_csv,
)
from .gpucb import AuxConfig, GpucbConfig, aux_maximize, gpucb_run
from .benchmarks import BENCHMARK_NAMES, Benchmark, get_benchmark, log_regret
from .harness import (
    ALGORITHMS,
    AlgorithmCurve,
    CurveSummary,
    ExperimentResult,
    ExperimentSpec,
    SingleRun,
    TimingReport,
    read_raw_csv,
    run_experiment,
    run_single,
    timing_compare,
    write_raw_csv,
    write_summary_csv,
)
from .svgplot import write_regret_svg
from .verify import (
    SUITES,
    VerifyReport,
    bn_growth_suite,
    coverage_suite,
    variance_bound_suite,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AlgorithmCurve",
    "AuxConfig",
    "BENCHMARK_NAMES",
    "Benchmark",
    "Cell",
    "ConfidenceSchedule",
    "CurveSummary",
    "DimensionMismatchError",
    "DuplicatePointError",
    "EvalRecord",
    "ExperimentResult",
    "ExperimentSpec",
    "FactorizationError",
    "GateRecord",
    "GpState",
    "GpucbConfig",
    "KERNEL_FAMILIES",
    "KernelSpec",
    "NonFiniteInputError",
    "ObjectiveValueError",
    "OptoptError",
    "PartitionExhaustedError",
    "PosteriorStats",
    "RunTrace",
    "SUITES",
    "SingleRun",
    "SooConfig",
    "TimingReport",
    "Tree",
    "UnknownBenchmarkError",
    "VerifyReport",
    "aux_maximize",
    "b_n",
    "bamsoo_run",
    "bn_growth_suite",
    "coverage_suite",
    "cross_kernel",
    "get_benchmark",
    "gp_extend",
    "gp_fit",
    "gp_posterior",
    "gp_posterior_batch",
    "gpucb_run",
    "hmax",
    "kernel_eval",
    "lipschitz_constant",
    "log_regret",
    "read_raw_csv",
    "root_cell",
    "run_experiment",
    "run_single",
    "soo_run",
    "split_cell",
    "timing_compare",
    "variance_bound_suite",
    "write_gate_log_csv",
    "write_raw_csv",
    "write_regret_svg",
    "write_summary_csv",
    "__version__",
]
