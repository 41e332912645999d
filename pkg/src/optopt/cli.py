"""Command line front end.

Three subcommands:

- ``run``: execute a benchmark experiment and write raw.csv,
  summary.csv, timing.txt, and (with --plot) regret.svg into --out.
- ``verify``: run the numerical invariant suites (variance-bound,
  coverage, bn-growth, or all) and print pass/fail counts.
- ``dump-config``: print the fully resolved experiment configuration as
  flat JSON, suitable for --config.

Configuration merging is strict and one level deep: a flat JSON config
file may set any known key, command line flags override the file, and
unknown keys are rejected.  The environment variable OPTOPT_SEED is the
base-seed fallback when neither a flag nor the config file sets one.

Exit codes: 0 success, 1 runtime failure, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .benchmarks import BENCHMARK_NAMES, get_benchmark
from .errors import OptoptError
from .harness import (
    ALGORITHMS,
    DEFAULT_BUDGET,
    DEFAULT_ETA,
    DEFAULT_HMAX_EPSILON,
    DEFAULT_REPEATS,
    ExperimentSpec,
    run_experiment,
    timing_compare,
    write_raw_csv,
    write_summary_csv,
)
from .kernel_gp import KERNEL_FAMILIES, KernelSpec
from .svgplot import write_regret_svg
from .verify import SUITES, bn_growth_suite, coverage_suite, variance_bound_suite

SEED_ENV_VAR = "OPTOPT_SEED"

# keys accepted in a --config file; "spec" keys map onto ExperimentSpec,
# the rest are run plumbing
SPEC_CONFIG_KEYS = (
    "benchmark",
    "algos",
    "repeats",
    "budget",
    "eta",
    "seed",
    "kernel_family",
    "lengthscales",
    "signal_variance",
    "hmax_epsilon",
    "value_shift",
    "value_scale",
    "value_clip",
)
RUN_CONFIG_KEYS = ("out", "plot", "jobs")
CONFIG_KEYS = SPEC_CONFIG_KEYS + RUN_CONFIG_KEYS


class BadArgsError(Exception):
    """Invalid flags or config contents; maps to exit code 2."""


def _parse_float_list(text: str, what: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise BadArgsError(f"{what}: expected comma-separated numbers, got {text!r}") from exc
    if not values:
        raise BadArgsError(f"{what}: empty list")
    return values


def load_config(path) -> dict:
    """Read and validate a flat JSON config file."""
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise BadArgsError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise BadArgsError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise BadArgsError(f"config {path} must hold a JSON object")
    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise BadArgsError(f"config {path}: unknown keys {', '.join(unknown)}")
    return data


def _merged_options(args: argparse.Namespace) -> dict:
    """Flag values override config-file values override defaults (None)."""
    options = {key: None for key in CONFIG_KEYS}
    if getattr(args, "config", None):
        options.update(load_config(args.config))
    for key in CONFIG_KEYS:
        flag_value = getattr(args, key, None)
        if flag_value is not None:
            options[key] = flag_value
    return options


def _resolve_seed(options: dict) -> int:
    if options["seed"] is not None:
        return int(options["seed"])
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise BadArgsError(f"{SEED_ENV_VAR}={env!r} is not an integer") from exc
    return 0


def spec_from_options(options: dict) -> ExperimentSpec:
    """Build the ExperimentSpec a merged option mapping describes."""
    benchmark = options["benchmark"]
    if not benchmark:
        raise BadArgsError("a benchmark is required (flag --benchmark or config key)")
    if benchmark not in BENCHMARK_NAMES:
        raise BadArgsError(f"unknown benchmark {benchmark!r}; choose from {', '.join(BENCHMARK_NAMES)}")

    algos_text = options["algos"] or ",".join(ALGORITHMS)
    algorithms = tuple(part.strip() for part in algos_text.split(",") if part.strip())
    bad = [a for a in algorithms if a not in ALGORITHMS]
    if bad or not algorithms:
        raise BadArgsError(f"--algos must name a subset of {','.join(ALGORITHMS)}, got {algos_text!r}")

    kernel = None
    kernel_fields = (options["kernel_family"], options["lengthscales"], options["signal_variance"])
    if any(v is not None for v in kernel_fields):
        dim = get_benchmark(benchmark).dim
        family = options["kernel_family"] or "squared_exponential"
        if family not in KERNEL_FAMILIES:
            raise BadArgsError(f"unknown kernel family {family!r}; choose from {', '.join(KERNEL_FAMILIES)}")
        if options["lengthscales"] is not None:
            lengthscales = _parse_float_list(str(options["lengthscales"]), "lengthscales")
            if len(lengthscales) == 1:
                lengthscales = lengthscales * dim
            if len(lengthscales) != dim:
                raise BadArgsError(f"lengthscales: expected 1 or {dim} values, got {len(lengthscales)}")
        else:
            lengthscales = (0.2,) * dim
        signal_variance = 1.0 if options["signal_variance"] is None else float(options["signal_variance"])
        try:
            kernel = KernelSpec(family, lengthscales, signal_variance)
        except (ValueError, OptoptError) as exc:
            raise BadArgsError(str(exc)) from exc

    try:
        return ExperimentSpec(
            benchmark=benchmark,
            algorithms=algorithms,
            repeats=DEFAULT_REPEATS if options["repeats"] is None else int(options["repeats"]),
            budget=DEFAULT_BUDGET if options["budget"] is None else int(options["budget"]),
            eta=DEFAULT_ETA if options["eta"] is None else float(options["eta"]),
            kernel=kernel,
            hmax_epsilon=DEFAULT_HMAX_EPSILON if options["hmax_epsilon"] is None else float(options["hmax_epsilon"]),
            base_seed=_resolve_seed(options),
            value_shift=options["value_shift"],
            value_scale=options["value_scale"],
            value_clip=options["value_clip"],
        )
    except ValueError as exc:
        raise BadArgsError(str(exc)) from exc


def spec_to_config(spec: ExperimentSpec) -> dict:
    """Flat JSON-ready mapping; spec_from_options inverts it exactly."""
    config = {
        "benchmark": spec.benchmark,
        "algos": ",".join(spec.algorithms),
        "repeats": spec.repeats,
        "budget": spec.budget,
        "eta": spec.eta,
        "seed": spec.base_seed,
        "kernel_family": None,
        "lengthscales": None,
        "signal_variance": None,
        "hmax_epsilon": spec.hmax_epsilon,
        "value_shift": spec.value_shift,
        "value_scale": spec.value_scale,
        "value_clip": spec.value_clip,
    }
    if spec.kernel is not None:
        config["kernel_family"] = spec.kernel.family
        config["lengthscales"] = ",".join(repr(v) for v in spec.kernel.lengthscales)
        config["signal_variance"] = spec.kernel.signal_variance
    return config


def _add_spec_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--benchmark", choices=BENCHMARK_NAMES, help="benchmark function")
    parser.add_argument("--algos", help=f"comma-separated subset of {','.join(ALGORITHMS)}")
    parser.add_argument("--repeats", type=int, help="repeats per stochastic algorithm")
    parser.add_argument("--budget", type=int, help="objective evaluations per run")
    parser.add_argument("--eta", type=float, help="confidence parameter in (0,1)")
    parser.add_argument("--seed", type=int, help=f"base seed (fallback: ${SEED_ENV_VAR}, then 0)")
    parser.add_argument("--kernel-family", dest="kernel_family", choices=KERNEL_FAMILIES)
    parser.add_argument("--lengthscales", help="comma-separated, one value broadcasts")
    parser.add_argument("--signal-variance", dest="signal_variance", type=float)
    parser.add_argument("--hmax-epsilon", dest="hmax_epsilon", type=float)
    parser.add_argument("--value-shift", dest="value_shift", type=float)
    parser.add_argument("--value-scale", dest="value_scale", type=float)
    parser.add_argument("--value-clip", dest="value_clip", type=float)
    parser.add_argument("--config", help="flat JSON config file; flags override it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a benchmark experiment")
    _add_spec_flags(run_p)
    run_p.add_argument("--out", help="output directory (created if missing)")
    run_p.add_argument("--plot", action="store_const", const=True, help="also write regret.svg")
    run_p.add_argument("--jobs", type=int, help="worker processes (default 1)")
    run_p.set_defaults(func=cmd_run, parser=run_p)

    verify_p = sub.add_parser("verify", help="run numerical invariant suites")
    verify_p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    verify_p.add_argument("--trials", type=int, help="checks per suite (default: full size)")
    verify_p.add_argument("--seed", type=int, default=0)
    verify_p.set_defaults(func=cmd_verify, parser=verify_p)

    dump_p = sub.add_parser("dump-config", help="print the resolved config as JSON")
    _add_spec_flags(dump_p)
    dump_p.add_argument("--out", help="write JSON here instead of stdout")
    dump_p.set_defaults(func=cmd_dump_config, parser=dump_p)
    return parser


def cmd_run(args: argparse.Namespace) -> int:
    options = _merged_options(args)
    spec = spec_from_options(options)
    if not options["out"]:
        raise BadArgsError("an output directory is required (flag --out or config key)")
    jobs = 1 if options["jobs"] is None else int(options["jobs"])
    if jobs < 1:
        raise BadArgsError("--jobs must be >= 1")
    out_dir = Path(options["out"])
    out_dir.mkdir(parents=True, exist_ok=True)

    result = run_experiment(spec, jobs=jobs)
    write_raw_csv(result, out_dir / "raw.csv")
    write_summary_csv(result, out_dir / "summary.csv")
    timing = timing_compare(spec, result=result)
    (out_dir / "timing.txt").write_text("\n".join(timing.lines()) + "\n")
    if options["plot"]:
        write_regret_svg(result.summary, out_dir / "regret.svg", title=spec.benchmark)
    for algorithm in spec.algorithms:
        curve = result.summary.curves[algorithm]
        print(f"{spec.benchmark} {algorithm}: final mean log-regret {curve.mean[-1]:+.3f}, "
              f"median {curve.median[-1]:+.3f}, wall {curve.total_wall_seconds:.2f}s")
    print(f"wrote {out_dir}/raw.csv, summary.csv, timing.txt"
          + (", regret.svg" if options["plot"] else ""))
    return 0


def _run_suite(name: str, trials: int | None, seed: int):
    if name == "variance-bound":
        return variance_bound_suite(trials=trials or 1000, seed=seed)
    if name == "coverage":
        return coverage_suite(runs=trials or 200, seed=seed)
    # bn-growth spreads its runs across the whole benchmark table
    seeds_per_benchmark = max(1, (trials or 50) // len(BENCHMARK_NAMES))
    return bn_growth_suite(seeds_per_benchmark=seeds_per_benchmark, seed=seed)


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        report = _run_suite(name, args.trials, args.seed)
        for line in report.lines:
            print(f"  {line}")
        verdict = "PASS" if report.passed else "FAIL"
        print(f"{name}: {report.checks} checks, {report.failures} failures -> {verdict}")
        failed = failed or not report.passed
    return 1 if failed else 0


def cmd_dump_config(args: argparse.Namespace) -> int:
    options = _merged_options(args)
    spec = spec_from_options(options)
    text = json.dumps(spec_to_config(spec), indent=2) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BadArgsError as exc:
        print(args.parser.format_usage(), end="", file=sys.stderr)
        print(f"optopt: error: {exc}", file=sys.stderr)
        return 2
    except OptoptError as exc:
        print(f"optopt: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"optopt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
