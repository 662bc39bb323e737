"""
Cutoff strategies for ALB screening
===================================
top_d       keep the d largest ALBs (ties to the smaller index)
zero        keep ALB > 0
percentile  keep ALB above the (1 - alpha) quantile of a permutation null
cv          pick the cutoff whose screened classifier scores best on a
            second training set, then screen the pooled data at it

Survival is always strict: a feature is kept iff its ALB exceeds the cutoff.
Degenerate features never survive.
"""

import logging
import math
from typing import List, Optional, Sequence, Union

import numpy as np

from albscreen.core import bayes
from albscreen.core.alb import alb_all, feature_alb
from albscreen.core.bandwidth import plugin_bandwidth
from albscreen.core.dataio import Dataset, concat_rows, stratified_split
from albscreen.core.errors import InvalidArgumentError, NoViableCutoffError, SchemaError
from albscreen.core.kernel import KernelId
from albscreen.core.metrics import rand_index
from albscreen.core.parallel import run_parallel
from albscreen.schemas.screening_schemas import (
    AlbResult,
    CutoffKind,
    CutoffRule,
    CvCandidateScore,
    NullSample,
    ScreeningReport,
)

logger = logging.getLogger(__name__)

MAX_CV_CANDIDATES = 10
TOP_D_RULES = ("n_plus_m", "n_minus_1", "n_over_log_n")


# ============================================================================
# THRESHOLD HELPERS
# ============================================================================

def _usable(results: Sequence[AlbResult]) -> List[AlbResult]:
    return [r for r in results if not r.degenerate]


def above_cutoff(results: Sequence[AlbResult], cutoff: float) -> List[int]:
    """Sorted indices of non-degenerate features with alb > cutoff"""
    return sorted(r.feature_index for r in _usable(results) if r.alb > cutoff)


def default_top_d(m: int, n: int, rule: str = "n_plus_m", available: Optional[int] = None) -> int:
    """
    Screening size d from the sample counts

    Args:
        m, n: class counts
        rule: n_plus_m (N), n_minus_1 (N - 1) or n_over_log_n (floor(N / log N))
        available: cap on d (usually the non-degenerate feature count)
    """
    total = m + n
    if rule == "n_plus_m":
        d = total
    elif rule == "n_minus_1":
        d = total - 1
    elif rule == "n_over_log_n":
        d = int(math.floor(total / math.log(total)))
    else:
        raise InvalidArgumentError(f"Unknown top-d rule '{rule}', expected one of {TOP_D_RULES}")
    d = max(d, 1)
    if available is not None:
        d = min(d, available)
    return d


# ============================================================================
# TOP-D / ZERO
# ============================================================================

def top_d_select(results: Sequence[AlbResult], d: int) -> ScreeningReport:
    """
    Keep the d largest ALBs

    Raises:
        InvalidArgumentError: d < 1 or d exceeds the non-degenerate count
    """
    usable = _usable(results)
    if d < 1 or d > len(usable):
        raise InvalidArgumentError(f"Cannot keep top {d} of {len(usable)} non-degenerate features")
    albs = np.array([r.alb for r in usable])
    idx = np.array([r.feature_index for r in usable])
    order = np.lexsort((idx, -albs))
    selected = sorted(int(j) for j in idx[order[:d]])
    return ScreeningReport(
        method="alb",
        rule=CutoffRule.top_d(d),
        selected=selected,
        alb_results=list(results),
    )


def zero_select(results: Sequence[AlbResult]) -> ScreeningReport:
    """Keep ALB > 0"""
    return ScreeningReport(
        method="alb",
        rule=CutoffRule.zero(),
        selected=above_cutoff(results, 0.0),
        threshold=0.0,
        alb_results=list(results),
    )


# ============================================================================
# PERMUTATION NULL / PERCENTILE
# ============================================================================

def permutation_null(
        dataset: Dataset,
        null_covariates: int,
        null_permutations: int,
        seed: int,
        threads: Optional[int] = None,
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> NullSample:
    """
    ALB* values under randomly permuted labels

    B covariates are drawn without replacement from the non-degenerate
    features; each is scored under d independent label permutations. The
    permutation for column j, repetition l uses its own substream
    SeedSequence(seed, spawn_key=(1, j, l)), so values do not depend on
    scheduling. Bandwidths are those of the unpermuted pooled column.

    Returns:
        NullSample with B * d values, covariate-major

    Raises:
        InvalidArgumentError: B exceeds the available features
    """
    dataset.require_both_classes(2)
    if seed < 0:
        raise InvalidArgumentError(f"seed must be non-negative, got {seed}")
    candidates = np.flatnonzero(np.ptp(dataset.features, axis=0) > 0.0)
    if null_covariates > candidates.size:
        raise InvalidArgumentError(
            f"B={null_covariates} exceeds the {candidates.size} non-constant features available"
        )
    picker = np.random.default_rng(np.random.SeedSequence(seed))
    covariates = [int(j) for j in picker.choice(candidates, size=null_covariates, replace=False)]

    def permuted_albs(j: int) -> List[float]:
        bandwidth = plugin_bandwidth(dataset.column(j), dataset.n_rows)
        values = []
        for rep in range(null_permutations):
            rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1, j, rep)))
            labels = rng.permutation(dataset.labels)
            values.append(feature_alb(dataset, j, labels=labels, bandwidth=bandwidth, kernel=kernel).alb)
        return values

    per_covariate = run_parallel(permuted_albs, covariates, threads)
    logger.info(f"✅ Permutation null: {null_covariates} covariate(s) x {null_permutations} permutation(s)")
    return NullSample(
        values=[v for values in per_covariate for v in values],
        null_covariates=null_covariates,
        null_permutations=null_permutations,
        seed=seed,
        covariates=covariates,
    )


def percentile_select(results: Sequence[AlbResult], null: NullSample, alpha: float) -> ScreeningReport:
    """
    Keep ALB above the (1 - alpha) quantile of the null (linear interpolation)
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"alpha must be in (0, 1), got {alpha}")
    if not null.values:
        raise InvalidArgumentError("Permutation null sample is empty")
    threshold = float(np.quantile(np.asarray(null.values, dtype=float), 1.0 - alpha))
    return ScreeningReport(
        method="alb",
        rule=CutoffRule.percentile(alpha, null.null_covariates, null.null_permutations, null.seed),
        selected=above_cutoff(results, threshold),
        threshold=threshold,
        alb_results=list(results),
        null_summary=null.summary(),
    )


# ============================================================================
# CROSS-VALIDATED CUTOFF
# ============================================================================

def default_cv_candidates(results: Sequence[AlbResult]) -> List[float]:
    """0 plus the quartiles of the positive ALBs"""
    positive = np.array([r.alb for r in _usable(results) if r.alb > 0.0])
    grid = {0.0}
    if positive.size:
        grid.update(float(q) for q in np.quantile(positive, [0.25, 0.5, 0.75]))
    return sorted(grid)[:MAX_CV_CANDIDATES]


def cv_select(
        train_a: Dataset,
        train_b: Dataset,
        candidates: Optional[Sequence[float]] = None,
        threads: Optional[int] = None,
        kernel: Union[KernelId, str] = KernelId.HALL,
        seed: int = 0,
) -> ScreeningReport:
    """
    Choose the cutoff by classifier accuracy on a second training set

    For each candidate, screen train_a, fit the KDE Bayes classifier on the
    survivors and score its Rand index on train_b. The largest cutoff among
    the maximizers wins (fewest variables kept); the pooled data is then
    screened at that cutoff.

    Raises:
        NoViableCutoffError: every candidate keeps nothing on train_a
    """
    if train_a.feature_names != train_b.feature_names:
        raise SchemaError("Both training sets must have the same feature columns")
    train_a.require_both_classes(2)
    train_b.require_both_classes(1)

    results_a = alb_all(train_a, threads=threads, kernel=kernel)
    grid = sorted({float(c) for c in candidates}) if candidates is not None else default_cv_candidates(results_a)
    if not 1 <= len(grid) <= MAX_CV_CANDIDATES:
        raise InvalidArgumentError(f"cv needs between 1 and {MAX_CV_CANDIDATES} candidate cutoffs, got {len(grid)}")

    def score_candidate(cutoff: float) -> CvCandidateScore:
        selected = above_cutoff(results_a, cutoff)
        if not selected:
            logger.warning(f"⚠️  Cutoff {cutoff:.6g} keeps no features; not viable")
            return CvCandidateScore(cutoff=cutoff, n_selected=0, viable=False)
        model = bayes.fit(train_a, selected, kernel=kernel)
        predicted = bayes.predict_many(model, train_b.features)
        return CvCandidateScore(
            cutoff=cutoff,
            n_selected=len(selected),
            rand_index=rand_index(predicted, train_b.labels),
        )

    scores = run_parallel(score_candidate, grid, threads)
    viable = [s for s in scores if s.viable]
    if not viable:
        raise NoViableCutoffError(f"None of the {len(grid)} candidate cutoffs keeps any feature")
    best = max(viable, key=lambda s: (s.rand_index, s.cutoff))
    logger.info(f"✅ CV cutoff {best.cutoff:.6g} (Rand {best.rand_index:.4f}, {best.n_selected} feature(s) on the first set)")

    pooled = concat_rows(train_a, train_b)
    pooled_results = alb_all(pooled, threads=threads, kernel=kernel)
    return ScreeningReport(
        method="alb",
        rule=CutoffRule.cross_validated(candidates=grid, seed=seed),
        selected=above_cutoff(pooled_results, best.cutoff),
        threshold=best.cutoff,
        alb_results=pooled_results,
        cv_scores=scores,
    )


# ============================================================================
# DISPATCH
# ============================================================================

def screen_alb(
        dataset: Dataset,
        rule: CutoffRule,
        threads: Optional[int] = None,
        kernel: Union[KernelId, str] = KernelId.HALL,
        results: Optional[Sequence[AlbResult]] = None,
) -> ScreeningReport:
    """
    Screen a dataset with any cutoff rule

    The cross-validated rule splits the dataset in stratified halves
    (seeded by rule.seed) to get its two training sets.
    """
    if rule.kind == CutoffKind.CROSS_VALIDATED:
        train_a, train_b = stratified_split(dataset, 0.5, rule.seed)
        return cv_select(train_a, train_b, rule.candidates, threads=threads, kernel=kernel, seed=rule.seed)

    if results is None:
        results = alb_all(dataset, threads=threads, kernel=kernel)
    if rule.kind == CutoffKind.TOP_D:
        report = top_d_select(results, rule.d)
    elif rule.kind == CutoffKind.ZERO:
        report = zero_select(results)
    else:
        null = permutation_null(
            dataset, rule.null_covariates, rule.null_permutations, rule.seed,
            threads=threads, kernel=kernel,
        )
        report = percentile_select(results, null, rule.alpha)
    logger.info(f"✅ ALB screening ({rule.label()}) kept {report.n_selected} of {dataset.p} features")
    return report
