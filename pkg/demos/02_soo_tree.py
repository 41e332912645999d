"""SOO walkthrough: optimistic tree search without smoothness knowledge.

Runs SOO on a 1-D function with a tiny budget and prints the evaluation
trace.  SOO repeatedly sweeps tree levels from the root down; at each
level it expands the best-valued leaf, but only when that leaf beats
every shallower expansion in the same sweep.  Deeper levels therefore
only open up where the function looks promising at coarser scales,
which is how the method hedges across many possible smoothness orders
at once.

Run:  python demos/02_soo_tree.py
"""

from optopt import SooConfig, hmax, soo_run


def f(x) -> float:
    v = float(x[0])
    return -((v - 0.72) ** 2) - 0.03 * abs(v - 0.72)


config = SooConfig(budget=16, dim=1)
trace = soo_run(f, config)

print("evaluation trace (t = evaluation index, n = expansions so far):")
for r in trace.records:
    print(f"  t={r.t:2d}  n={r.n:2d}  x={r.point[0]:.6f}  f={r.f:+.6f}")
print(f"\nbest found: x={trace.final_best_point[0]:.6f}  f={trace.final_best_value:+.6f}")
print("(regret vs true optimum 0.72:", f"{abs(trace.final_best_point[0] - 0.72):.4f})")

# the depth limit h_max(n) = ceil(n^epsilon) widens as expansions
# accumulate, so the tree deepens gradually rather than plunging
print("\nh_max schedule with epsilon=0.5:")
print("  n:     ", " ".join(f"{n:3d}" for n in (1, 2, 4, 9, 16, 25, 100)))
print("  h_max: ", " ".join(f"{hmax(n, 0.5):3d}" for n in (1, 2, 4, 9, 16, 25, 100)))

# determinism: SOO takes no random decisions at all
again = soo_run(f, config)
print("\nbyte-identical on rerun:", trace.stable_lines() == again.stable_lines())
