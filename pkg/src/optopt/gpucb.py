"""GP-UCB baseline: query the argmax of mu + sqrt(B_t) * sigma.

The acquisition is maximized by a self-contained auxiliary optimizer
(seeded random multistart plus coordinate-wise pattern search), standing
in for exact acquisition maximization; the width multiplier reuses the
BaMSOO schedule with N = t so the two methods are hyperparameter-matched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bamsoo import ConfidenceSchedule, b_n
from .kernel_gp import KernelSpec, gp_extend, gp_fit, gp_posterior_batch
from .soo import RunTrace, _TraceBuilder, check_objective_value

# Pattern search starts with this coordinate step (unit-cube fraction).
INITIAL_STEP = 0.25

# A proposed query closer than this to an observed point is a duplicate.
DUPLICATE_QUERY_TOLERANCE = 1e-6


@dataclass(frozen=True)
class AuxConfig:
    """Budget knobs for the auxiliary acquisition maximizer."""

    n_starts: int = 8
    n_random: int = 256
    local_iters: int = 30
    local_shrink: float = 0.5

    def __post_init__(self):
        if min(self.n_starts, self.n_random, self.local_iters) < 1:
            raise ValueError("aux optimizer sizes must be positive")
        if not (0.0 < self.local_shrink < 1.0):
            raise ValueError("local_shrink must lie in (0, 1)")


@dataclass(frozen=True)
class GpucbConfig:
    budget: int
    schedule: ConfidenceSchedule
    aux: AuxConfig = AuxConfig()

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")


def _acq_values(acq, X: np.ndarray) -> np.ndarray:
    """Evaluate the acquisition on row-stacked points.

    Accepts both batch-aware callables ((M,D) -> (M,)) and plain
    point -> real callables.
    """
    try:
        vals = np.asarray(acq(X), dtype=float)
        if vals.shape != (X.shape[0],):
            raise TypeError
    except (TypeError, ValueError, IndexError):
        vals = np.array([float(acq(row)) for row in X])
    if np.any(np.isnan(vals)):
        i = int(np.argmax(np.isnan(vals)))
        raise ValueError(f"acquisition returned NaN at {tuple(X[i])!r}")
    return vals


def aux_maximize(acq, dim: int, cfg: AuxConfig, seed: int) -> np.ndarray:
    """Maximize an acquisition over [0,1]^dim, deterministically per seed.

    Draws n_random uniform candidates, keeps the top n_starts, and runs
    local_iters rounds of coordinate-wise pattern search from each (step
    shrunk by local_shrink every round, moves clipped to the box);
    returns the best point found.
    """
    rng = np.random.default_rng(seed)
    cand = rng.uniform(size=(cfg.n_random, dim))
    vals = _acq_values(acq, cand)
    order = np.argsort(-vals, kind="stable")[: cfg.n_starts]
    P = cand[order].copy()
    V = vals[order].copy()
    step = INITIAL_STEP
    for _ in range(cfg.local_iters):
        for d in range(dim):
            C = np.vstack([P, P])
            C[: len(P), d] = np.clip(C[: len(P), d] + step, 0.0, 1.0)
            C[len(P) :, d] = np.clip(C[len(P) :, d] - step, 0.0, 1.0)
            cv = _acq_values(acq, C)
            up, down = cv[: len(P)], cv[len(P) :]
            take_up = (up > V) & (up >= down)
            take_down = (down > V) & ~take_up
            P[take_up, d] = C[: len(P)][take_up, d]
            V[take_up] = up[take_up]
            P[take_down, d] = C[len(P) :][take_down, d]
            V[take_down] = down[take_down]
        step *= cfg.local_shrink
    return P[int(np.argmax(V))].copy()


def gpucb_run(objective, dim: int, cfg: GpucbConfig, kernel: KernelSpec, seed: int) -> RunTrace:
    """Run GP-UCB: random initial point, then argmax-UCB queries.

    Every queried point lies in [0,1]^dim; proposals duplicating an
    observed point fall back to the best random candidate at least
    1e-6 away from all data.
    """
    if kernel.dim != dim:
        raise ValueError(f"kernel dim {kernel.dim} != dim {dim}")
    rng = np.random.default_rng(seed)
    trace = _TraceBuilder("gpucb")
    gp = gp_fit(kernel, [], [])
    t = 0

    def evaluate(point: np.ndarray) -> None:
        nonlocal gp, t
        pt = tuple(float(c) for c in point)
        value = check_objective_value(pt, objective(np.asarray(pt)))
        gp = gp_extend(gp, pt, value)
        t += 1
        trace.record(t, 0, t, pt, value)

    evaluate(rng.uniform(size=dim))
    while t < cfg.budget:
        B = b_n(cfg.schedule, t)
        state = gp

        def acq(X):
            X = np.atleast_2d(np.asarray(X, dtype=float))
            mu, sigma = gp_posterior_batch(state, X)
            return mu + B * sigma

        x = aux_maximize(acq, dim, cfg.aux, seed=int(rng.integers(2**63)))
        if _min_dist(gp.points, x) < DUPLICATE_QUERY_TOLERANCE:
            x = _fallback_candidate(acq, gp.points, dim, rng, cfg.aux.n_random)
        evaluate(x)
    return trace.build()


def _min_dist(points: np.ndarray, x: np.ndarray) -> float:
    if points.shape[0] == 0:
        return math.inf
    return float(np.sqrt(np.min(np.sum((points - x) ** 2, axis=1))))


def _fallback_candidate(acq, points: np.ndarray, dim: int, rng, n_random: int) -> np.ndarray:
    """Best random candidate >= 1e-6 away from all observed points."""
    for _ in range(64):
        cand = rng.uniform(size=(n_random, dim))
        d2 = np.min(
            np.sum((cand[:, None, :] - points[None, :, :]) ** 2, axis=2), axis=1
        )
        ok = d2 >= DUPLICATE_QUERY_TOLERANCE**2
        if np.any(ok):
            vals = _acq_values(acq, cand[ok])
            return cand[ok][int(np.argmax(vals))]
    raise RuntimeError("could not find a non-duplicate candidate")
