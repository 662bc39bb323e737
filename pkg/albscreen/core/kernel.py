"""
Kernel functions and kernel density evaluation

Hall's heavy-tailed kernel is the default everywhere; the Gaussian kernel
exists for diagnostics and sensitivity checks only.
"""

import math
from enum import Enum
from typing import Callable, Sequence, Union

import numpy as np
from scipy.special import logsumexp

from albscreen.core.errors import DomainError, InvalidArgumentError

ArrayLike = Union[float, Sequence[float], np.ndarray]
DensityValue = float

# Phi(1) to 16 significant digits
PHI_ONE = 0.8413447460685429
HALL_NORMALIZER = 1.0 / (math.sqrt(8.0 * math.pi * math.e) * PHI_ONE)
LOG_HALL_NORMALIZER = math.log(HALL_NORMALIZER)
LOG_GAUSS_NORMALIZER = -0.5 * math.log(2.0 * math.pi)


class KernelId(str, Enum):
    HALL = "hall"
    GAUSSIAN = "gaussian"


# ============================================================================
# KERNEL PRIMITIVES
# ============================================================================

def _as_finite_array(z: ArrayLike) -> np.ndarray:
    arr = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("Kernel argument must be finite")
    return arr


def _scalar_or_array(values: np.ndarray):
    return float(values) if values.ndim == 0 else values


def log_hall_kernel(z: ArrayLike):
    """log K0(z) = log(c) - 0.5 * log(1 + |z|)^2"""
    arr = _as_finite_array(z)
    lz = np.log1p(np.abs(arr))
    return _scalar_or_array(LOG_HALL_NORMALIZER - 0.5 * lz * lz)


def hall_kernel(z: ArrayLike):
    """
    Hall's heavy-tailed kernel

        K0(z) = exp(-0.5 * log(1 + |z|)^2) / (sqrt(8 pi e) * Phi(1))

    Strictly positive and symmetric for every finite z.

    Args:
        z: scalar or array of finite reals

    Returns:
        float for scalar input, ndarray otherwise

    Raises:
        DomainError: if any input is NaN or infinite
    """
    arr = _as_finite_array(z)
    lz = np.log1p(np.abs(arr))
    return _scalar_or_array(HALL_NORMALIZER * np.exp(-0.5 * lz * lz))


def log_gaussian_kernel(z: ArrayLike):
    arr = _as_finite_array(z)
    return _scalar_or_array(LOG_GAUSS_NORMALIZER - 0.5 * arr * arr)


def gaussian_kernel(z: ArrayLike):
    """Standard normal density; diagnostics only."""
    arr = _as_finite_array(z)
    return _scalar_or_array(np.exp(LOG_GAUSS_NORMALIZER - 0.5 * arr * arr))


_KERNELS = {
    KernelId.HALL: (hall_kernel, log_hall_kernel),
    KernelId.GAUSSIAN: (gaussian_kernel, log_gaussian_kernel),
}


def kernel_function(kernel: Union[KernelId, str] = KernelId.HALL) -> Callable:
    return _KERNELS[KernelId(kernel)][0]


def log_kernel_function(kernel: Union[KernelId, str] = KernelId.HALL) -> Callable:
    return _KERNELS[KernelId(kernel)][1]


# ============================================================================
# DENSITY EVALUATION
# ============================================================================

def _validate_points(points: ArrayLike, b: float) -> np.ndarray:
    pts = np.asarray(points, dtype=float).ravel()
    if pts.size == 0:
        raise InvalidArgumentError("Kernel density needs at least one point")
    if not (np.isfinite(b) and b > 0):
        raise InvalidArgumentError(f"Bandwidth must be positive, got {b}")
    return pts


def kde_eval(
        x: float,
        points: ArrayLike,
        b: float,
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> DensityValue:
    """
    Kernel density estimate at x: (1 / (N b)) * sum_r K((x - X_r) / b)

    Args:
        x: evaluation point
        points: the N sample points
        b: bandwidth (> 0)
        kernel: kernel to use (Hall by default)

    Returns:
        density value (>= 0, strictly positive for the Hall kernel)
    """
    pts = _validate_points(points, b)
    u = (float(x) - pts) / b
    return float(np.sum(kernel_function(kernel)(u)) / (pts.size * b))


def log_kde_eval_many(
        xs: ArrayLike,
        points: ArrayLike,
        b: float,
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> np.ndarray:
    """Log density at every x in xs, evaluated in log space (no underflow)."""
    pts = _validate_points(points, b)
    grid = np.atleast_1d(np.asarray(xs, dtype=float))
    u = (grid[:, None] - pts[None, :]) / b
    log_k = log_kernel_function(kernel)(u)
    return logsumexp(log_k, axis=1) - math.log(pts.size * b)


def loo_density(
        i: int,
        points: ArrayLike,
        b: float,
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> DensityValue:
    """
    Leave-one-out density at points[i], estimated from the other points.

    Normalized by (len(points) - 1) * b, i.e. by the number of terms that are
    actually summed.
    """
    pts = np.asarray(points, dtype=float).ravel()
    if pts.size < 2:
        raise InvalidArgumentError("Leave-one-out density needs at least 2 points")
    if not 0 <= i < pts.size:
        raise InvalidArgumentError(f"Index {i} out of range for {pts.size} points")
    return kde_eval(pts[i], np.delete(pts, i), b, kernel)
