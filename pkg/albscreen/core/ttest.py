"""
Welch two-sample t-test screening

Two-sided p-values come from the Student-t survival function (regularized
incomplete beta). Conventions for zero variance: two constant samples with
equal means give t = 0, p = 1; constant samples with different means give
t = +/-inf, p = 0.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from scipy import stats

from albscreen.core.dataio import Dataset
from albscreen.core.errors import InvalidArgumentError
from albscreen.schemas.screening_schemas import ScreeningReport, TTestMode, TTestModeKind, TTestResult

logger = logging.getLogger(__name__)


def _welch_arrays(
        mean0: np.ndarray, var0: np.ndarray, n0: int,
        mean1: np.ndarray, var1: np.ndarray, n1: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Welch t, Welch-Satterthwaite df and two-sided p for aligned moment arrays"""
    v0 = var0 / n0
    v1 = var1 / n1
    se2 = v0 + v1
    diff = mean0 - mean1
    flat = se2 == 0.0

    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(flat, 0.0, diff / np.sqrt(np.where(flat, 1.0, se2)))
        df = np.where(
            flat,
            float(n0 + n1 - 2),
            se2 ** 2 / (v0 ** 2 / (n0 - 1) + v1 ** 2 / (n1 - 1)),
        )
    # zero variance on both sides: the sign of the mean difference decides
    t = np.where(flat & (diff != 0.0), np.copysign(np.inf, diff), t)

    p = np.clip(2.0 * stats.t.sf(np.abs(t), df), 0.0, 1.0)
    p = np.where(flat, np.where(diff == 0.0, 1.0, 0.0), p)
    return t, df, p


def welch_t(x0: Sequence[float], x1: Sequence[float], feature_index: int = 0) -> TTestResult:
    """
    Welch two-sample t-test of x0 against x1

    Args:
        x0: class-0 sample (length >= 2)
        x1: class-1 sample (length >= 2)
        feature_index: echoed in the result

    Returns:
        TTestResult with t = (mean0 - mean1) / se
    """
    a = np.asarray(x0, dtype=float).ravel()
    b = np.asarray(x1, dtype=float).ravel()
    if a.size < 2 or b.size < 2:
        raise InvalidArgumentError(f"welch_t needs >= 2 values per sample (got {a.size}, {b.size})")
    t, df, p = _welch_arrays(
        np.array([a.mean()]), np.array([a.var(ddof=1)]), a.size,
        np.array([b.mean()]), np.array([b.var(ddof=1)]), b.size,
    )
    return TTestResult(feature_index=feature_index, t=float(t[0]), df=float(df[0]), p_value=float(p[0]))


def welch_t_all(dataset: Dataset) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorized Welch statistics for every column

    Returns:
        (t, df, p) arrays of length p
    """
    dataset.require_both_classes(2)
    x0 = dataset.features[dataset.labels == 0]
    x1 = dataset.features[dataset.labels == 1]
    return _welch_arrays(
        x0.mean(axis=0), x0.var(axis=0, ddof=1), x0.shape[0],
        x1.mean(axis=0), x1.var(axis=0, ddof=1), x1.shape[0],
    )


def ttest_results(dataset: Dataset) -> List[TTestResult]:
    t, df, p = welch_t_all(dataset)
    return [
        TTestResult(feature_index=j, t=float(t[j]), df=float(df[j]), p_value=float(p[j]))
        for j in range(dataset.p)
    ]


def ttest_screen(dataset: Dataset, mode: TTestMode) -> ScreeningReport:
    """
    Select features by two-sided p-value below alpha, or by the k largest |t|

    Ties in |t| go to the smaller feature index.

    Raises:
        InvalidArgumentError: k larger than the feature count, or a class
            with fewer than 2 samples
    """
    results = ttest_results(dataset)
    if mode.kind == TTestModeKind.P_VALUE_BELOW:
        selected = [r.feature_index for r in results if r.p_value < mode.alpha]
    else:
        if mode.k > dataset.p:
            raise InvalidArgumentError(f"Cannot keep {mode.k} of {dataset.p} features")
        abs_t = np.abs(np.array([r.t for r in results]))
        order = np.lexsort((np.arange(dataset.p), -abs_t))
        selected = sorted(int(j) for j in order[:mode.k])

    logger.info(f"✅ t-test screening ({mode.label()}) kept {len(selected)} of {dataset.p} features")
    return ScreeningReport(method="ttest", rule=mode, selected=selected, ttest_results=results)
