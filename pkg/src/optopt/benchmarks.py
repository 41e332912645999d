"""Benchmark objectives: Branin, Rosenbrock (2-D), Hartmann3/6, Shekel (m=10).

Standard minimization forms (Hedar test-set coefficients), negated to
maximization and with domains affinely rescaled to the unit hypercube.
Optimum values and locations were computed by the checked-in oracle
``scripts/compute_benchmark_optima.py`` (dense grid scan plus local
refinement) and are frozen here; they are not literature copies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import UnknownBenchmarkError


@dataclass(frozen=True)
class Benchmark:
    """A maximization problem on [0,1]^dim with known optimum."""

    name: str
    dim: int
    optimum_value: float
    optimum_points: tuple[tuple[float, ...], ...]
    raw_lower: tuple[float, ...]
    raw_upper: tuple[float, ...]
    _raw_min: Callable[[np.ndarray], np.ndarray] = field(repr=False)

    def to_raw(self, U: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.raw_lower)
        hi = np.asarray(self.raw_upper)
        return lo + np.asarray(U, dtype=float) * (hi - lo)

    def eval_batch(self, U) -> np.ndarray:
        """Negated raw objective at row-stacked unit-cube points."""
        U = np.atleast_2d(np.asarray(U, dtype=float))
        if U.shape[1] != self.dim:
            raise ValueError(f"{self.name} expects dim {self.dim}, got {U.shape[1]}")
        return -self._raw_min(self.to_raw(U))

    def eval(self, u) -> float:
        return float(self.eval_batch(np.asarray(u, dtype=float)[None, :])[0])

    def __call__(self, u) -> float:
        return self.eval(u)


def log_regret(bench: Benchmark, f_plus: float) -> float:
    """log10(f* - f+), clamped at 1e-16 ("solved to machine precision")."""
    gap = bench.optimum_value - f_plus
    if gap < -1e-9:
        raise ValueError(
            f"f_plus {f_plus!r} exceeds stored optimum {bench.optimum_value!r} of {bench.name}"
        )
    return math.log10(max(gap, 1e-16))


# -- raw minimization forms -------------------------------------------------


def _branin(X: np.ndarray) -> np.ndarray:
    x1, x2 = X[:, 0], X[:, 1]
    b = 5.1 / (4.0 * math.pi**2)
    c = 5.0 / math.pi
    s = 10.0
    t = 1.0 / (8.0 * math.pi)
    return (x2 - b * x1**2 + c * x1 - 6.0) ** 2 + s * (1.0 - t) * np.cos(x1) + s


def _rosenbrock2(X: np.ndarray) -> np.ndarray:
    x1, x2 = X[:, 0], X[:, 1]
    return 100.0 * (x2 - x1**2) ** 2 + (x1 - 1.0) ** 2


_HART3_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])
_HART3_A = np.array(
    [[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]]
)
_HART3_P = 1e-4 * np.array(
    [
        [3689.0, 1170.0, 2673.0],
        [4699.0, 4387.0, 7470.0],
        [1091.0, 8732.0, 5547.0],
        [381.0, 5743.0, 8828.0],
    ]
)

_HART6_ALPHA = _HART3_ALPHA
_HART6_A = np.array(
    [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ]
)
_HART6_P = 1e-4 * np.array(
    [
        [1312.0, 1696.0, 5569.0, 124.0, 8283.0, 5886.0],
        [2329.0, 4135.0, 8307.0, 3736.0, 1004.0, 9991.0],
        [2348.0, 1451.0, 3522.0, 2883.0, 3047.0, 6650.0],
        [4047.0, 8828.0, 8732.0, 5743.0, 1091.0, 381.0],
    ]
)


def _hartmann(alpha, A, P):
    def f(X: np.ndarray) -> np.ndarray:
        inner = np.sum(A[None, :, :] * (X[:, None, :] - P[None, :, :]) ** 2, axis=2)
        return -np.sum(alpha[None, :] * np.exp(-inner), axis=1)

    return f


_SHEKEL_BETA = 0.1 * np.array([1.0, 2.0, 2.0, 4.0, 4.0, 6.0, 3.0, 7.0, 5.0, 5.0])
_SHEKEL_C = np.array(
    [
        [4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 5.0, 8.0, 6.0, 7.0],
        [4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 3.0, 1.0, 2.0, 3.6],
        [4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 5.0, 8.0, 6.0, 7.0],
        [4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 3.0, 1.0, 2.0, 3.6],
    ]
)


def _shekel10(X: np.ndarray) -> np.ndarray:
    d2 = np.sum((X[:, :, None] - _SHEKEL_C[None, :, :]) ** 2, axis=1)
    return -np.sum(1.0 / (d2 + _SHEKEL_BETA[None, :]), axis=1)


# Optimum constants frozen from scripts/compute_benchmark_optima.py.
_DEFS: dict[str, Benchmark] = {}
for _name, _fun, _lo, _hi, _fstar, _opts in [
    (
        "branin",
        _branin,
        (-5.0, 0.0),
        (10.0, 15.0),
        -0.39788735772973816,
        (
            (0.1238938230940138, 0.8183333333333334),
            (0.5427728435726529, 0.15166666666666667),
            (0.9616518644320685, 0.16499999957667158),
        ),
    ),
    ("rosenbrock2", _rosenbrock2, (-5.0, -5.0), (10.0, 10.0), 0.0, ((0.4, 0.4),)),
    (
        "hartmann3",
        _hartmann(_HART3_ALPHA, _HART3_A, _HART3_P),
        (0.0,) * 3,
        (1.0,) * 3,
        3.862779787332663,
        ((0.11458886140684883, 0.5556488943983431, 0.8525469848897886),),
    ),
    (
        "hartmann6",
        _hartmann(_HART6_ALPHA, _HART6_A, _HART6_P),
        (0.0,) * 6,
        (1.0,) * 6,
        3.322368011415515,
        (
            (
                0.20168951149952524,
                0.15001068832370834,
                0.4768739746011049,
                0.27533243199768304,
                0.3116516166112373,
                0.6573005329062309,
            ),
        ),
    ),
    (
        "shekel10",
        _shekel10,
        (0.0,) * 4,
        (10.0,) * 4,
        10.53644315348353,
        ((0.4000746867999044, 0.39995094810444176, 0.4000746868624053, 0.3999509479389672),),
    ),
]:
    _DEFS[_name] = Benchmark(
        name=_name,
        dim=len(_lo),
        optimum_value=_fstar,
        optimum_points=_opts,
        raw_lower=_lo,
        raw_upper=_hi,
        _raw_min=_fun,
    )

BENCHMARK_NAMES = tuple(_DEFS)


def get_benchmark(name: str) -> Benchmark:
    """Look up a benchmark by name; unknown names list the valid ones."""
    try:
        return _DEFS[name]
    except KeyError:
        raise UnknownBenchmarkError(
            f"unknown benchmark {name!r}; valid names: {', '.join(BENCHMARK_NAMES)}"
        ) from None
