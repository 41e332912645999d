"""Simultaneous Optimistic Optimization on the unit hypercube.

SOO sweeps tree levels h = 0 .. min(depth, h_max(n)), expanding at each
level the best-valued leaf iff its value strictly exceeds the best value
expanded so far in the sweep (nu_max).  It needs no smoothness
knowledge; the depth cap h_max(n) = ceil(n^epsilon) trades deep against
broad exploration.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .errors import ObjectiveValueError, PartitionExhaustedError
from .partition import Tree

# Hard cap on expansions per run, guarding against degenerate configs
# that keep expanding without consuming evaluation budget.
MAX_EXPANSIONS = 500_000


@dataclass(frozen=True)
class SooConfig:
    """Evaluation budget, dimension, and the h_max schedule exponent."""

    budget: int
    dim: int
    hmax_epsilon: float = 0.5

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if not (0.0 < self.hmax_epsilon < 1.0):
            raise ValueError("hmax_epsilon must lie in (0, 1)")


@dataclass(frozen=True)
class EvalRecord:
    """One true objective evaluation.

    ``t`` counts evaluations, ``n`` is the expansion counter at the time
    of the evaluation, ``N`` the confidence-bound counter (0 for SOO,
    which never computes bounds).  ``wall_s`` is seconds since run start.
    """

    t: int
    n: int
    N: int
    point: tuple[float, ...]
    f: float
    f_plus: float
    wall_s: float


@dataclass(frozen=True)
class RunTrace:
    """Per-evaluation records plus the final incumbent."""

    algorithm: str
    records: tuple[EvalRecord, ...]
    final_best_point: tuple[float, ...]
    final_best_value: float

    def stable_lines(self) -> list[str]:
        """Deterministic serialization (wall-clock fields excluded)."""
        out = [self.algorithm]
        for r in self.records:
            pt = ",".join(repr(c) for c in r.point)
            out.append(f"{r.t} {r.n} {r.N} {pt} {r.f!r} {r.f_plus!r}")
        fb = ",".join(repr(c) for c in self.final_best_point)
        out.append(f"best {fb} {self.final_best_value!r}")
        return out


def hmax(n: int, epsilon: float) -> int:
    """Depth cap ceil(n^epsilon); defined as 1 for n <= 0."""
    if n <= 0:
        return 1
    return math.ceil(n**epsilon)


def check_objective_value(point, value) -> float:
    v = float(value)
    if not math.isfinite(v):
        raise ObjectiveValueError(point, v)
    return v


class _TraceBuilder:
    """Accumulates EvalRecords with a shared wall clock."""

    def __init__(self, algorithm: str):
        self.algorithm = algorithm
        self.records: list[EvalRecord] = []
        self._start = time.perf_counter()
        self._best_point: tuple[float, ...] | None = None
        self._best_value = -math.inf

    def record(self, t: int, n: int, N: int, point: tuple[float, ...], f: float) -> None:
        if f > self._best_value:
            self._best_value = f
            self._best_point = point
        self.records.append(
            EvalRecord(t, n, N, point, f, self._best_value, time.perf_counter() - self._start)
        )

    @property
    def best_value(self) -> float:
        return self._best_value

    def build(self) -> RunTrace:
        assert self._best_point is not None, "no evaluations recorded"
        return RunTrace(self.algorithm, tuple(self.records), self._best_point, self._best_value)


def soo_run(objective, config: SooConfig, seed: int | None = None) -> RunTrace:
    """Run SOO.  Deterministic; ``seed`` is accepted for uniformity only.

    The root center is evaluation t=1.  Each sweep resets nu_max to
    -inf and walks levels 0..min(depth, h_max(n)) (both re-read as the
    tree grows), expanding a level's argmax leaf iff its value strictly
    exceeds nu_max; expansion evaluates both children centers.  Stops
    once the budget is reached (finishing the pair in flight, so at most
    budget+1 evaluations) or when no leaf qualifies during a full sweep.
    """
    del seed
    tree = Tree(config.dim)
    trace = _TraceBuilder("soo")
    t = 0
    n = 1  # expansion counter, per the h_max schedule indexing

    def evaluate(level: int, index: int) -> None:
        nonlocal t
        node = tree.node(level, index)
        point = node.cell.center
        value = check_objective_value(point, objective(np.asarray(point)))
        tree.set_value(level, index, value, evaluated=True)
        t += 1
        trace.record(t, n, 0, point, value)

    evaluate(0, 0)
    if t >= config.budget:
        return trace.build()

    while True:
        expanded_any = False
        nu_max = -math.inf
        h = 0
        while h <= min(tree.depth(), hmax(n, config.hmax_epsilon)):
            best = tree.leaf_argmax_at_level(h)
            if best is not None and best[1] > nu_max:
                cell, g = best
                try:
                    children = tree.expand(h, cell.index)
                except PartitionExhaustedError:
                    tree.mark_exhausted(h, cell.index)
                    h += 1
                    continue
                for child in children:
                    evaluate(child.level, child.index)
                nu_max = g
                n += 1
                expanded_any = True
                if t >= config.budget:
                    return trace.build()
                if n > MAX_EXPANSIONS:
                    return trace.build()
            h += 1
        if not expanded_any:
            return trace.build()
