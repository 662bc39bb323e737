"""
Plug-in bandwidth rule and robust scale estimation

    b = 0.162 * N^(-1/5) * s

where s is IQR/1.35 (quartiles by linear interpolation between order
statistics), falling back to the sample standard deviation when the IQR is
zero. Constant features are flagged as degenerate.
"""

import logging
from typing import Sequence, Union

import numpy as np

from albscreen.core.errors import InvalidArgumentError
from albscreen.schemas.screening_schemas import BandwidthSpec, ScaleSource

logger = logging.getLogger(__name__)

PLUGIN_CONSTANT = 0.162
IQR_TO_SD = 1.35

ArrayLike = Union[Sequence[float], np.ndarray]


def robust_scale(values: ArrayLike) -> float:
    """
    Robust scale estimate IQR / 1.35

    Args:
        values: nonempty sequence of reals

    Returns:
        nonnegative scale; 0 iff the first and third quartiles coincide
    """
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise InvalidArgumentError("robust_scale needs at least one value")
    q1, q3 = np.percentile(arr, [25.0, 75.0])
    return float((q3 - q1) / IQR_TO_SD)


def plugin_bandwidth(values: ArrayLike, total_count: int) -> BandwidthSpec:
    """
    Plug-in bandwidth for one feature

    Args:
        values: the pooled feature column (both classes for screening,
            one class for the classifier)
        total_count: the sample count N in N^(-1/5)

    Returns:
        BandwidthSpec; degenerate (no value) when every value is identical
    """
    if total_count < 2:
        raise InvalidArgumentError(f"total_count must be >= 2, got {total_count}")
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise InvalidArgumentError("plugin_bandwidth needs at least one value")

    if arr.size < 2 or np.ptp(arr) == 0.0:
        return BandwidthSpec(value=None, scale=0.0, scale_source=ScaleSource.DEGENERATE)

    factor = PLUGIN_CONSTANT * float(total_count) ** -0.2
    scale = robust_scale(arr)
    if scale > 0:
        return BandwidthSpec(value=factor * scale, scale=scale, scale_source=ScaleSource.ROBUST_IQR)

    # more than half the values tied: IQR collapses but the spread does not
    scale = float(np.std(arr, ddof=1))
    return BandwidthSpec(value=factor * scale, scale=scale, scale_source=ScaleSource.SAMPLE_SD)
