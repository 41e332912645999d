"""Stationary kernels and exact noiseless Gaussian-process posteriors.

Supports anisotropic squared-exponential and Matern 5/2 kernels with a
zero prior mean, incremental (rank-one Cholesky) posterior updates, and
kernel-derived Lipschitz constants for the posterior-deviation bound
sigma(y) <= L * min_i ||x_i - y||.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_triangular

from .errors import (
    DimensionMismatchError,
    DuplicatePointError,
    FactorizationError,
    NonFiniteInputError,
)

KERNEL_FAMILIES = ("squared_exponential", "matern52")

# Jitter ladder: start at BASE_JITTER_FACTOR * signal_variance, escalate
# by 10x on Cholesky failure up to MAX_JITTER_FACTOR * signal_variance.
BASE_JITTER_FACTOR = 1e-10
MAX_JITTER_FACTOR = 1e-4

# Points closer than this (Euclidean) are treated as duplicates.
DUPLICATE_TOLERANCE = 1e-12

# Computed variances below -NEGATIVE_VARIANCE_FACTOR * signal_variance
# indicate a bug rather than roundoff.
_NEGATIVE_VARIANCE_FACTOR = 1e-8


@dataclass(frozen=True)
class KernelSpec:
    """A stationary kernel family with anisotropic lengthscales.

    Parameters
    ----------
    family : str
        One of ``"squared_exponential"`` or ``"matern52"``.
    lengthscales : tuple of float
        One strictly positive lengthscale per input dimension.
    signal_variance : float, optional
        Value of kappa(x, x); strictly positive.  Default 1.0.
    """

    family: str
    lengthscales: tuple[float, ...]
    signal_variance: float = 1.0

    def __post_init__(self):
        if self.family not in KERNEL_FAMILIES:
            raise ValueError(f"unknown kernel family {self.family!r}; expected one of {KERNEL_FAMILIES}")
        ls = tuple(float(v) for v in self.lengthscales)
        if len(ls) == 0:
            raise ValueError("lengthscales must be non-empty")
        if not all(math.isfinite(v) and v > 0 for v in ls):
            raise ValueError("lengthscales must be finite and strictly positive")
        sv = float(self.signal_variance)
        if not (math.isfinite(sv) and sv > 0):
            raise ValueError("signal_variance must be finite and strictly positive")
        object.__setattr__(self, "lengthscales", ls)
        object.__setattr__(self, "signal_variance", sv)

    @property
    def dim(self) -> int:
        return len(self.lengthscales)


def _as_points(spec: KernelSpec, X, what: str) -> np.ndarray:
    A = np.atleast_2d(np.asarray(X, dtype=float))
    if A.ndim != 2 or A.shape[1] != spec.dim:
        raise DimensionMismatchError(
            f"{what} has shape {np.asarray(X).shape}, expected (*, {spec.dim})"
        )
    if not np.all(np.isfinite(A)):
        raise NonFiniteInputError(f"{what} contains non-finite coordinates")
    return A


def _scaled_sqdist(spec: KernelSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    # ||(x - y) / l||^2 via explicit differences: the expanded
    # x^2 + y^2 - 2xy form loses ~1e-17 to cancellation, enough to
    # misclassify deep sibling cell centers (~1e-9 apart) as duplicates
    ls = np.asarray(spec.lengthscales)
    diff = (X[:, None, :] - Y[None, :, :]) / ls
    return np.einsum("ijk,ijk->ij", diff, diff)


def cross_kernel(spec: KernelSpec, X, Y) -> np.ndarray:
    """Kernel matrix kappa(X, Y) for row-stacked point arrays."""
    A = _as_points(spec, X, "X")
    B = _as_points(spec, Y, "Y")
    d2 = _scaled_sqdist(spec, A, B)
    if spec.family == "squared_exponential":
        return spec.signal_variance * np.exp(-0.5 * d2)
    r = np.sqrt(5.0 * d2)
    return spec.signal_variance * (1.0 + r + (r * r) / 3.0) * np.exp(-r)


def kernel_eval(spec: KernelSpec, x, y) -> float:
    """Evaluate kappa(x, y) for single points.

    Symmetric in its arguments and equal to ``signal_variance`` at x = y.
    """
    return float(cross_kernel(spec, [x], [y])[0, 0])


def lipschitz_constant(spec: KernelSpec) -> float:
    """Smallest L with sigma(y) <= L * ||x - y|| from kernel curvature.

    The bound L^2 <= |d^2 kappa~(r)/dr^2| at r = 0 gives, per family and
    per dimension j, L_j = sqrt(signal_variance) * c / lengthscale_j with
    c = 1 for the squared exponential and c = sqrt(5/3) for Matern 5/2;
    the anisotropic constant is the max over dimensions.
    """
    c = 1.0 if spec.family == "squared_exponential" else math.sqrt(5.0 / 3.0)
    return math.sqrt(spec.signal_variance) * c / min(spec.lengthscales)


@dataclass(frozen=True)
class PosteriorStats:
    """Posterior predictive mean and standard deviation at one point."""

    mean: float
    std: float


@dataclass(frozen=True)
class GpState:
    """Immutable GP posterior state over t observed (point, value) pairs.

    ``factor`` is the lower Cholesky factor of K + jitter * I where K is
    the kernel Gram matrix of ``points``.  ``gp_extend`` returns a new
    state; existing states stay valid (arrays are never mutated).
    """

    kernel: KernelSpec
    points: np.ndarray
    values: np.ndarray
    factor: np.ndarray
    jitter: float
    _z: np.ndarray = field(repr=False)  # solve(factor, values), cached

    @property
    def t(self) -> int:
        return self.points.shape[0]


def _check_values(values: np.ndarray) -> None:
    if not np.all(np.isfinite(values)):
        raise NonFiniteInputError("observation values contain non-finite entries")


def _check_distinct(points: np.ndarray) -> None:
    t = points.shape[0]
    if t < 2:
        return
    diff = points[:, None, :] - points[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(d2, np.inf)
    if np.min(d2) < DUPLICATE_TOLERANCE**2:
        raise DuplicatePointError("training points contain duplicates within tolerance")


def gp_fit(kernel: KernelSpec, points, values, jitter: float | None = None) -> GpState:
    """Fit a GP state by full Cholesky factorization of K + jitter * I.

    ``jitter`` is the starting jitter (default ``1e-10 * signal_variance``);
    on factorization failure it escalates by factors of 10 up to
    ``1e-4 * signal_variance`` before raising ``FactorizationError``.
    """
    X = np.asarray(points, dtype=float)
    if X.size == 0:
        X = X.reshape(0, kernel.dim)
    X = _as_points(kernel, X, "points") if X.shape[0] else X
    y = np.asarray(values, dtype=float).reshape(-1)
    if X.shape[0] != y.shape[0]:
        raise DimensionMismatchError(
            f"{X.shape[0]} points but {y.shape[0]} values"
        )
    _check_values(y)
    _check_distinct(X)
    sv = kernel.signal_variance
    j = BASE_JITTER_FACTOR * sv if jitter is None else float(jitter)
    t = X.shape[0]
    if t == 0:
        empty = np.zeros((0, 0))
        return GpState(kernel, X, y, empty, j, np.zeros(0))
    K = cross_kernel(kernel, X, X)
    max_j = MAX_JITTER_FACTOR * sv
    while True:
        try:
            L = np.linalg.cholesky(K + j * np.eye(t))
            break
        except np.linalg.LinAlgError:
            j *= 10.0
            if j > max_j * (1.0 + 1e-12):
                raise FactorizationError(
                    f"Cholesky failed for t={t} even at jitter {max_j:g}"
                ) from None
    z = solve_triangular(L, y, lower=True, check_finite=False)
    return GpState(kernel, X, y, L, j, z)


def gp_extend(state: GpState, x, f: float) -> GpState:
    """Extend a GP state with one observation via rank-one Cholesky update.

    Equivalent to ``gp_fit`` on the extended data; falls back to a full
    refactorization when the new diagonal pivot is non-positive.
    """
    xa = _as_points(state.kernel, [x], "x")[0]
    fv = float(f)
    if not math.isfinite(fv):
        raise NonFiniteInputError(f"observation value {fv!r} is not finite")
    if state.t == 0:
        return gp_fit(state.kernel, xa[None, :], [fv], jitter=state.jitter)
    dists2 = np.sum((state.points - xa) ** 2, axis=1)
    if np.min(dists2) < DUPLICATE_TOLERANCE**2:
        raise DuplicatePointError(f"point {tuple(xa)!r} duplicates an observed point")
    k = cross_kernel(state.kernel, state.points, xa[None, :])[:, 0]
    a = solve_triangular(state.factor, k, lower=True, check_finite=False)
    pivot_sq = state.kernel.signal_variance + state.jitter - float(a @ a)
    if pivot_sq <= 0.0:
        pts = np.vstack([state.points, xa[None, :]])
        vals = np.append(state.values, fv)
        return gp_fit(state.kernel, pts, vals, jitter=state.jitter)
    t = state.t
    L = np.zeros((t + 1, t + 1))
    L[:t, :t] = state.factor
    L[t, :t] = a
    L[t, t] = math.sqrt(pivot_sq)
    z = np.append(state._z, (fv - float(a @ state._z)) / L[t, t])
    return GpState(
        state.kernel,
        np.vstack([state.points, xa[None, :]]),
        np.append(state.values, fv),
        L,
        state.jitter,
        z,
    )


def gp_posterior_batch(state: GpState, X) -> tuple[np.ndarray, np.ndarray]:
    """Posterior mean and std arrays at row-stacked query points."""
    Q = _as_points(state.kernel, X, "query")
    sv = state.kernel.signal_variance
    if state.t == 0:
        m = Q.shape[0]
        return np.zeros(m), np.full(m, math.sqrt(sv))
    Kq = cross_kernel(state.kernel, state.points, Q)
    V = solve_triangular(state.factor, Kq, lower=True, check_finite=False)
    mu = V.T @ state._z
    var = sv - np.sum(V * V, axis=0)
    bad = var < -_NEGATIVE_VARIANCE_FACTOR * sv
    assert not np.any(bad), f"posterior variance {var.min():g} below roundoff floor"
    sigma = np.sqrt(np.maximum(var, 0.0))
    out_ok = np.all(np.isfinite(mu)) and np.all(np.isfinite(sigma))
    assert out_ok, "posterior produced non-finite output"
    return mu, sigma


def gp_posterior(state: GpState, x) -> PosteriorStats:
    """Posterior predictive mean/std at a single point (zero prior mean)."""
    mu, sigma = gp_posterior_batch(state, [x])
    return PosteriorStats(float(mu[0]), float(sigma[0]))
