"""A small regret-curve experiment through the library API.

Reproduces in miniature what `optopt run` does: run the three
algorithms on Branin with a shared protocol, summarize log10 regret
curves across repeats, and write raw.csv, summary.csv, and regret.svg
into demos/out/.  The full protocol (repeats=50, budget=150) is what
the acceptance experiments use; this demo shrinks both to stay quick.

Run:  python demos/04_benchmark_experiment.py
"""

from pathlib import Path

from optopt import (
    ExperimentSpec,
    run_experiment,
    timing_compare,
    write_raw_csv,
    write_regret_svg,
    write_summary_csv,
)

spec = ExperimentSpec(benchmark="branin", repeats=8, budget=60, base_seed=0)
result = run_experiment(spec)

print("final log10 regret by algorithm (mean over repeats):")
for algorithm, curve in result.summary.curves.items():
    print(f"  {algorithm:7s} mean {curve.mean[-1]:+.3f}  median {curve.median[-1]:+.3f}  "
          f"std {curve.std[-1]:.3f}  wall {curve.total_wall_seconds:.2f}s")

timing = timing_compare(spec, result=result)
print("\ntiming:", "; ".join(timing.lines()))

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)
write_raw_csv(result, out / "raw.csv")
write_summary_csv(result, out / "summary.csv")
write_regret_svg(result.summary, out / "regret.svg", title="branin")
print(f"\nwrote {out}/raw.csv, summary.csv, regret.svg")
