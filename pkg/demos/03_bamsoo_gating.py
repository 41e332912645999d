"""BaMSOO gating: spending the budget only where the GP allows hope.

BaMSOO follows SOO's expansion schedule but, before paying for a child
evaluation, asks a GP posterior whether the point could still beat the
incumbent f+.  If the upper confidence bound falls below f+, the child
is assigned its lower confidence bound instead of an evaluation, and
the budget is saved for somewhere useful.  This demo runs both
algorithms on the same function at the same budget and shows what the
gate rejected.

Run:  python demos/03_bamsoo_gating.py
"""

import numpy as np

from optopt import ConfidenceSchedule, KernelSpec, SooConfig, bamsoo_run, b_n, soo_run


def f(x) -> float:
    v = np.asarray(x)
    return float(-np.sum((v - 0.3) ** 2) * 8.0 + np.sin(10.0 * v[0]))


config = SooConfig(budget=40, dim=2)
kernel = KernelSpec("squared_exponential", (0.2, 0.2), 4.0)
schedule = ConfidenceSchedule(eta=0.05)

# the confidence width B_N grows slowly with the bound counter N, so
# early gates are cautious and later ones lean harder on the GP
print("confidence widths: ", ", ".join(f"B_{n}={b_n(schedule, n):.3f}" for n in (1, 10, 100)))

gate_log = []
bam = bamsoo_run(f, config, schedule, kernel, seed=2, gate_log=gate_log)
soo = soo_run(f, config)

evaluated = [g for g in gate_log if g.decision == "evaluate"]
bounded = [g for g in gate_log if g.decision == "bound"]
print(f"\ngate decisions: {len(evaluated)} evaluated, {len(bounded)} bounded away")
print("first few rejected candidates (U fell short of the incumbent):")
for g in bounded[:5]:
    print(f"  level {g.level}  x=({g.center[0]:.3f}, {g.center[1]:.3f})  "
          f"U={g.upper:+.3f} < f+={g.f_plus:+.3f}")

print(f"\nbest at budget {config.budget}:")
print(f"  soo     f={soo.final_best_value:+.6f}  x={tuple(round(c, 4) for c in soo.final_best_point)}")
print(f"  bamsoo  f={bam.final_best_value:+.6f}  x={tuple(round(c, 4) for c in bam.final_best_point)}")

# every true evaluation passed its gate: U >= f+ at gate time
ok = all(g.upper >= g.f_plus for g in evaluated)
print(f"\ngate invariant (U >= f+ for every evaluated node): {ok}")
