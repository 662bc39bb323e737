"""
ALB (Average Log-Bayes factor) statistic
========================================

For a feature observed on n class-0 and m class-1 samples:

    ALB = (1 / (n + m)) * sum_i log( within_i / pooled_i )

within_i is the leave-one-out kernel density at sample i estimated from the
other samples of i's class, normalized by (class count - 1) * b; pooled_i is
the leave-one-out density from all other samples, normalized by
(n + m - 1) * b. Both use the same plug-in bandwidth b computed on the
pooled values, so the statistic is label-free in its bandwidth and
invariant to affine rescaling of the feature.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from albscreen.core.bandwidth import plugin_bandwidth
from albscreen.core.dataio import Dataset
from albscreen.core.errors import InvalidArgumentError
from albscreen.core.kernel import KernelId, kernel_function
from albscreen.core.parallel import run_parallel
from albscreen.schemas.screening_schemas import AlbResult, BandwidthSpec

logger = logging.getLogger(__name__)

# Smallest positive normal double; densities are clamped here before logs
DENSITY_FLOOR = float(np.finfo(float).tiny)

# Rows of the pairwise kernel matrix evaluated at once
ROW_BLOCK = 512


@dataclass(frozen=True)
class LabeledFeature:
    """One feature column with aligned 0/1 labels"""
    values: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float).ravel()
        labels = np.asarray(self.labels).ravel().astype(np.int8)
        if values.shape != labels.shape:
            raise InvalidArgumentError("values and labels must have the same length")
        if not np.all(np.isin(labels, (0, 1))):
            raise InvalidArgumentError("labels must be 0 or 1")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return int(np.count_nonzero(self.labels == 0))

    @property
    def m(self) -> int:
        return int(np.count_nonzero(self.labels == 1))


def alb_upper_bound(m: int, n: int) -> float:
    """
    Finite upper bound on ALB: log(2) * max(m / (m - 1), n / (n - 1))

    Raises:
        InvalidArgumentError: m < 2 or n < 2
    """
    if m < 2 or n < 2:
        raise InvalidArgumentError(f"alb_upper_bound needs m, n >= 2 (m={m}, n={n})")
    return math.log(2.0) * max(m / (m - 1.0), n / (n - 1.0))


def _log_density_ratios(
        values: np.ndarray,
        labels: np.ndarray,
        b: float,
        kernel: Union[KernelId, str],
) -> Tuple[np.ndarray, int]:
    """Per-sample log(within_i / pooled_i) and the number of clamped densities"""
    total = values.size
    class_counts = np.array([np.count_nonzero(labels == 0), np.count_nonzero(labels == 1)])
    own_count = class_counts[labels]
    k_func = kernel_function(kernel)

    pooled_sum = np.empty(total)
    within_sum = np.empty(total)
    for start in range(0, total, ROW_BLOCK):
        stop = min(start + ROW_BLOCK, total)
        rows = np.arange(start, stop)
        weights = k_func((values[rows, None] - values[None, :]) / b)
        weights[rows - start, rows] = 0.0
        same_class = labels[rows, None] == labels[None, :]
        pooled_sum[start:stop] = weights.sum(axis=1)
        within_sum[start:stop] = np.where(same_class, weights, 0.0).sum(axis=1)

    pooled = pooled_sum / ((total - 1) * b)
    within = within_sum / ((own_count - 1) * b)

    clamped = int(np.count_nonzero(pooled < DENSITY_FLOOR) + np.count_nonzero(within < DENSITY_FLOOR))
    pooled = np.maximum(pooled, DENSITY_FLOOR)
    within = np.maximum(within, DENSITY_FLOOR)
    return np.log(within) - np.log(pooled), clamped


def alb_statistic(
        feature: LabeledFeature,
        b: BandwidthSpec,
        feature_index: int = 0,
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> AlbResult:
    """
    ALB of one feature

    Args:
        feature: values with labels; both classes need >= 2 samples
        b: bandwidth for every density in the statistic
        feature_index: column index echoed in the result
        kernel: Hall by default

    Returns:
        AlbResult; a degenerate bandwidth yields alb = 0 flagged degenerate

    Raises:
        InvalidArgumentError: a class has fewer than 2 samples
    """
    if feature.n < 2 or feature.m < 2:
        raise InvalidArgumentError(
            f"ALB needs at least 2 samples per class (n={feature.n}, m={feature.m})"
        )
    if b.is_degenerate:
        return AlbResult(feature_index=feature_index, alb=0.0, bandwidth=b, degenerate=True)

    log_ratios, clamped = _log_density_ratios(feature.values, feature.labels, float(b.value), kernel)
    if clamped:
        logger.warning(
            f"⚠️  Feature {feature_index}: {clamped} density value(s) clamped before log"
        )
    alb = float(np.sum(log_ratios) / feature.values.size)
    return AlbResult(
        feature_index=feature_index,
        alb=alb,
        bandwidth=b,
        degenerate=False,
        underflow_count=clamped,
    )


def feature_alb(
        dataset: Dataset,
        j: int,
        labels: Optional[np.ndarray] = None,
        bandwidth: Optional[BandwidthSpec] = None,
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> AlbResult:
    """ALB of column j, optionally under substitute labels (permutation null)"""
    values = dataset.column(j)
    if bandwidth is None:
        bandwidth = plugin_bandwidth(values, dataset.n_rows)
    feature = LabeledFeature(values, dataset.labels if labels is None else labels)
    return alb_statistic(feature, bandwidth, feature_index=j, kernel=kernel)


def alb_all(
        dataset: Dataset,
        threads: Optional[int] = None,
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> List[AlbResult]:
    """
    ALB for every feature, in feature order

    Each feature gets its own plug-in bandwidth on the pooled column with
    N = n + m. Output is identical for any worker count.

    Raises:
        InvalidArgumentError: a class has fewer than 2 samples
    """
    dataset.require_both_classes(2)
    logger.info(f"Computing ALB for {dataset.p} features (n={dataset.n}, m={dataset.m})")
    results = run_parallel(lambda j: feature_alb(dataset, j, kernel=kernel), range(dataset.p), threads)

    degenerate = sum(1 for r in results if r.degenerate)
    if degenerate:
        logger.info(f"⚠️  {degenerate} degenerate (constant) feature(s) scored 0 and excluded")
    return results


def alb_values(results: Sequence[AlbResult]) -> np.ndarray:
    """ALB values as an array, NaN where degenerate"""
    return np.array([np.nan if r.degenerate else r.alb for r in results], dtype=float)
