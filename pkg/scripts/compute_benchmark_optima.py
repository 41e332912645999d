"""Oracle for the frozen benchmark optimum constants.

Computes high-precision global optima for the five benchmark functions
(Hedar test set conventions) by dense grid scan followed by local
refinement, independently of the library code in src/.  The printed
values are frozen into ``optopt.benchmarks``; rerun this script to
audit them.

Run:  python scripts/compute_benchmark_optima.py
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

# ---------------------------------------------------------------------------
# Raw formulas, minimization form, natural domains.
# ---------------------------------------------------------------------------


def branin_raw(x: np.ndarray) -> float:
    x1, x2 = x
    a = 1.0
    b = 5.1 / (4.0 * np.pi**2)
    c = 5.0 / np.pi
    r = 6.0
    s = 10.0
    t = 1.0 / (8.0 * np.pi)
    return a * (x2 - b * x1**2 + c * x1 - r) ** 2 + s * (1 - t) * np.cos(x1) + s


def rosenbrock2_raw(x: np.ndarray) -> float:
    x1, x2 = x
    return 100.0 * (x2 - x1**2) ** 2 + (x1 - 1.0) ** 2


HART3_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])
HART3_A = np.array(
    [
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
        [3.0, 10.0, 30.0],
        [0.1, 10.0, 35.0],
    ]
)
HART3_P = 1e-4 * np.array(
    [
        [3689.0, 1170.0, 2673.0],
        [4699.0, 4387.0, 7470.0],
        [1091.0, 8732.0, 5547.0],
        [381.0, 5743.0, 8828.0],
    ]
)


def hartmann3_raw(x: np.ndarray) -> float:
    inner = np.sum(HART3_A * (x[None, :] - HART3_P) ** 2, axis=1)
    return -float(np.sum(HART3_ALPHA * np.exp(-inner)))


HART6_ALPHA = np.array([1.0, 1.2, 3.0, 3.2])
HART6_A = np.array(
    [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ]
)
HART6_P = 1e-4 * np.array(
    [
        [1312.0, 1696.0, 5569.0, 124.0, 8283.0, 5886.0],
        [2329.0, 4135.0, 8307.0, 3736.0, 1004.0, 9991.0],
        [2348.0, 1451.0, 3522.0, 2883.0, 3047.0, 6650.0],
        [4047.0, 8828.0, 8732.0, 5743.0, 1091.0, 381.0],
    ]
)


def hartmann6_raw(x: np.ndarray) -> float:
    inner = np.sum(HART6_A * (x[None, :] - HART6_P) ** 2, axis=1)
    return -float(np.sum(HART6_ALPHA * np.exp(-inner)))


SHEKEL_BETA = 0.1 * np.array([1.0, 2.0, 2.0, 4.0, 4.0, 6.0, 3.0, 7.0, 5.0, 5.0])
SHEKEL_C = np.array(
    [
        [4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 5.0, 8.0, 6.0, 7.0],
        [4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 3.0, 1.0, 2.0, 3.6],
        [4.0, 1.0, 8.0, 6.0, 3.0, 2.0, 5.0, 8.0, 6.0, 7.0],
        [4.0, 1.0, 8.0, 6.0, 7.0, 9.0, 3.0, 1.0, 2.0, 3.6],
    ]
)


def shekel10_raw(x: np.ndarray) -> float:
    d2 = np.sum((x[:, None] - SHEKEL_C) ** 2, axis=0)
    return -float(np.sum(1.0 / (d2 + SHEKEL_BETA)))


PROBLEMS = [
    ("branin", branin_raw, [(-5.0, 10.0), (0.0, 15.0)], 400),
    ("rosenbrock2", rosenbrock2_raw, [(-5.0, 10.0), (-5.0, 10.0)], 400),
    ("hartmann3", hartmann3_raw, [(0.0, 1.0)] * 3, 80),
    ("hartmann6", hartmann6_raw, [(0.0, 1.0)] * 6, 11),
    ("shekel10", shekel10_raw, [(0.0, 10.0)] * 4, 40),
]


def refine(fun, x0, bounds):
    res = minimize(fun, x0, method="Nelder-Mead", options={"xatol": 1e-14, "fatol": 1e-15, "maxiter": 20000, "maxfev": 40000})
    x = np.clip(res.x, [b[0] for b in bounds], [b[1] for b in bounds])
    return x, fun(x)


def main() -> None:
    rng = np.random.default_rng(0)
    for name, fun, bounds, grid_n in PROBLEMS:
        dim = len(bounds)
        axes = [np.linspace(lo, hi, grid_n) for lo, hi in bounds]
        mesh = np.meshgrid(*axes, indexing="ij")
        pts = np.stack([m.ravel() for m in mesh], axis=1)
        vals = np.array([fun(p) for p in pts])
        order = np.argsort(vals)[:60]
        # add random multistarts to dodge grid aliasing
        rand = np.column_stack(
            [rng.uniform(lo, hi, size=2000) for lo, hi in bounds]
        )
        rvals = np.array([fun(p) for p in rand])
        rorder = np.argsort(rvals)[:40]
        starts = np.vstack([pts[order], rand[rorder]])
        best_x, best_f = None, np.inf
        local = []
        for x0 in starts:
            x, f = refine(fun, x0, bounds)
            local.append((f, tuple(np.round(x, 5))))
            if f < best_f:
                best_x, best_f = x, f
        # count distinct minimizers within 1e-6 of the global value
        minimizers = sorted(
            {xx for f, xx in local if f < best_f + 1e-6}
        )
        unit = [(best_x[j] - bounds[j][0]) / (bounds[j][1] - bounds[j][0]) for j in range(dim)]
        print(f"{name}: min f = {best_f:.12f}  (max form: {-best_f:.12f})")
        print(f"  argmin raw  = {np.array2string(best_x, precision=10)}")
        print(f"  argmin unit = {np.array2string(np.array(unit), precision=10)}")
        print(f"  near-global minimizers found: {len(minimizers)}")
        for m in minimizers[:6]:
            print(f"    {m}")


if __name__ == "__main__":
    main()
