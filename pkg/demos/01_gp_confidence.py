"""Gaussian process posterior: fit, extend, and confidence bounds.

Fits a noiseless GP to a handful of 1-D observations, prints the
posterior at a few queries, and demonstrates two properties the rest of
the library leans on: the posterior interpolates observed points
exactly, and the posterior standard deviation at a query is bounded by
the kernel's Lipschitz constant times the distance to the nearest
observation.

Run:  python demos/01_gp_confidence.py
"""

import numpy as np

from optopt import KernelSpec, gp_extend, gp_fit, gp_posterior, lipschitz_constant


def f(x: float) -> float:
    return float(np.sin(6.0 * x) + 0.5 * x)


kernel = KernelSpec("squared_exponential", (0.15,), 1.0)
train_x = [0.1, 0.35, 0.6, 0.9]
state = gp_fit(kernel, [(x,) for x in train_x], [f(x) for x in train_x])

print("posterior after 4 observations (mean +- std):")
for q in (0.0, 0.2, 0.5, 0.75, 1.0):
    post = gp_posterior(state, (q,))
    print(f"  x={q:.2f}  {post.mean:+.4f} +- {post.std:.4f}   truth {f(q):+.4f}")

print("\ninterpolation at the observed points (std collapses to ~0):")
for x in train_x:
    post = gp_posterior(state, (x,))
    print(f"  x={x:.2f}  mean err {abs(post.mean - f(x)):.2e}  std {post.std:.2e}")

# the variance bound: sigma(y) <= L * distance(y, nearest observation).
# BaMSOO's gate analysis relies on this: far from data the GP is honest
# about its ignorance at a rate set by the kernel.
L = lipschitz_constant(kernel)
print(f"\nkernel Lipschitz constant L = {L:.4f}")
rng = np.random.default_rng(0)
worst = 0.0
for q in rng.uniform(size=200):
    post = gp_posterior(state, (q,))
    dist = min(abs(q - x) for x in train_x)
    if dist > 0:
        worst = max(worst, post.std / (L * dist))
print(f"worst observed std / (L * dist) over 200 queries: {worst:.3f}  (<= 1)")

# incremental extension: add a fifth point, the posterior tightens there
state2 = gp_extend(state, (0.5,), f(0.5))
before = gp_posterior(state, (0.45,)).std
after = gp_posterior(state2, (0.45,)).std
print(f"\nstd at x=0.45 before/after observing x=0.5: {before:.4f} -> {after:.4f}")
