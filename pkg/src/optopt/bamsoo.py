"""BaMSOO: SOO's expansion schedule with GP confidence-bound gating.

Instead of evaluating every new cell center, BaMSOO first computes the
GP upper confidence bound U_N = mu + B_N * sigma there.  If U_N is below
the incumbent f+, the true evaluation is skipped and the node is
assigned its lower confidence bound as a surrogate value g; such nodes
stay expandable because their cells may still contain the optimizer.
B_N = sqrt(2 log(pi^2 N^2 / 6 eta)) makes all bounds hold simultaneously
with probability at least 1 - eta.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import PartitionExhaustedError
from .kernel_gp import GpState, KernelSpec, gp_extend, gp_fit, gp_posterior
from .partition import Cell, Tree
from .soo import MAX_EXPANSIONS, RunTrace, SooConfig, _TraceBuilder, check_objective_value, hmax

GATE_LOG_COLUMNS = ("N", "level", "index", "mu", "sigma", "B_N", "U", "L", "f_plus", "decision")

# Consecutive bound-only expansions tolerated before a run is declared
# stalled.  Once the incumbent sits within the GP's interpolation error
# of the optimum, every new child can fail the U >= f+ gate forever; the
# tree then grows without consuming budget.  Stopping is safe: the
# returned trace is a prefix of the infinite-patience trace, no gate
# decision or evaluated point is altered.
STALL_EXPANSION_STREAK = 1000


@dataclass(frozen=True)
class ConfidenceSchedule:
    """The eta parameter of the B_N confidence-width sequence."""

    eta: float

    def __post_init__(self):
        if not (0.0 < self.eta < 1.0):
            raise ValueError("eta must lie in (0, 1)")


def b_n(schedule: ConfidenceSchedule, N: int) -> float:
    """B_N = sqrt(2 log(pi^2 N^2 / 6 eta)); non-decreasing in N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    radicand = 2.0 * math.log(math.pi**2 * N**2 / (6.0 * schedule.eta))
    # eta < 1 < pi^2/6 guarantees positivity for every N >= 1
    assert radicand > 0.0
    return math.sqrt(radicand)


@dataclass(frozen=True)
class GateRecord:
    """One gate decision: the confidence interval and what it led to."""

    N: int
    level: int
    index: int
    center: tuple[float, ...]
    mu: float
    sigma: float
    b: float
    upper: float
    lower: float
    f_plus: float  # incumbent at gate time
    decision: str  # "evaluate" or "bound"


@dataclass
class BamsooState:
    """Mutable run state: tree, GP data, incumbent, and the counters.

    ``t`` counts true objective evaluations (the GP holds exactly those
    points), ``n`` expansions, ``N`` confidence-bound checks; the two
    unconditional evaluations (random initial point and root center)
    count in both t and N, so N >= t throughout.
    """

    tree: Tree
    gp: GpState
    f_plus: float
    t: int
    n: int
    N: int
    schedule: ConfidenceSchedule


def evaluate_or_bound(
    state: BamsooState,
    objective,
    cell: Cell,
    gate_log: list[GateRecord] | None = None,
) -> tuple[float, bool]:
    """Gate one child cell: evaluate the objective or assign its LCB.

    Increments N, forms U/L = mu +- B_N * sigma at the cell center from
    the current GP; evaluates the true objective iff U >= f+ (extending
    the GP and t), else g = L.  Either way f+ <- max(f+, g).
    """
    center = cell.center
    state.N += 1
    post = gp_posterior(state.gp, center)
    b = b_n(state.schedule, state.N)
    upper = post.mean + b * post.std
    lower = post.mean - b * post.std
    f_plus_before = state.f_plus
    if upper >= state.f_plus:
        g = check_objective_value(center, objective(np.asarray(center)))
        state.gp = gp_extend(state.gp, center, g)
        state.t += 1
        evaluated = True
    else:
        g = lower
        evaluated = False
    if g > state.f_plus:
        state.f_plus = g
    if gate_log is not None:
        gate_log.append(
            GateRecord(
                state.N,
                cell.level,
                cell.index,
                center,
                post.mean,
                post.std,
                b,
                upper,
                lower,
                f_plus_before,
                "evaluate" if evaluated else "bound",
            )
        )
    return g, evaluated


def bamsoo_run(
    objective,
    config: SooConfig,
    schedule: ConfidenceSchedule,
    kernel: KernelSpec,
    seed: int,
    gate_log: list[GateRecord] | None = None,
) -> RunTrace:
    """Run BaMSOO.  The budget counts true objective evaluations only.

    A seeded uniform initial point is evaluated first; it enters the GP
    and the incumbent but not the tree.  The root center is then
    evaluated unconditionally.  Sweeps proceed as in SOO with each child
    evaluation replaced by ``evaluate_or_bound``; the trace records true
    evaluations only.
    """
    if kernel.dim != config.dim:
        raise ValueError(f"kernel dim {kernel.dim} != config dim {config.dim}")
    rng = np.random.default_rng(seed)
    trace = _TraceBuilder("bamsoo")
    state = BamsooState(
        tree=Tree(config.dim),
        gp=gp_fit(kernel, [], []),
        f_plus=-math.inf,
        t=0,
        n=1,
        N=0,
        schedule=schedule,
    )

    def evaluate_unconditional(point: tuple[float, ...]) -> float:
        value = check_objective_value(point, objective(np.asarray(point)))
        state.gp = gp_extend(state.gp, point, value)
        state.t += 1
        state.N += 1
        if value > state.f_plus:
            state.f_plus = value
        trace.record(state.t, state.n, state.N, point, value)
        return value

    x_init = tuple(float(c) for c in rng.uniform(size=config.dim))
    evaluate_unconditional(x_init)
    if state.t >= config.budget:
        return trace.build()

    root = state.tree.node(0, 0).cell
    g_root = evaluate_unconditional(root.center)
    state.tree.set_value(0, 0, g_root, evaluated=True)
    if state.t >= config.budget:
        return trace.build()

    bound_streak = 0
    while True:
        expanded_any = False
        nu_max = -math.inf
        h = 0
        while h <= min(state.tree.depth(), hmax(state.n, config.hmax_epsilon)):
            best = state.tree.leaf_argmax_at_level(h)
            if best is not None and best[1] > nu_max:
                cell, g = best
                try:
                    children = state.tree.expand(h, cell.index)
                except PartitionExhaustedError:
                    state.tree.mark_exhausted(h, cell.index)
                    h += 1
                    continue
                any_evaluated = False
                for child in children:
                    child_g, evaluated = evaluate_or_bound(state, objective, child, gate_log)
                    state.tree.set_value(child.level, child.index, child_g, evaluated)
                    if evaluated:
                        any_evaluated = True
                        trace.record(state.t, state.n, state.N, child.center, child_g)
                bound_streak = 0 if any_evaluated else bound_streak + 1
                nu_max = g
                state.n += 1
                expanded_any = True
                if state.t >= config.budget:
                    return trace.build()
                if bound_streak >= STALL_EXPANSION_STREAK or state.n > MAX_EXPANSIONS:
                    return trace.build()
            h += 1
        if not expanded_any:
            return trace.build()


def write_gate_log_csv(records: list[GateRecord], path) -> None:
    """Persist gate decisions for invariant replay."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(GATE_LOG_COLUMNS)
        for r in records:
            writer.writerow(
                [r.N, r.level, r.index, repr(r.mu), repr(r.sigma), repr(r.b), repr(r.upper), repr(r.lower), repr(r.f_plus), r.decision]
            )
