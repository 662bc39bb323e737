"""Cutoff strategies and the permutation null"""

import numpy as np
import pytest
from pydantic import ValidationError

from albscreen.core.alb import alb_all, alb_upper_bound, feature_alb
from albscreen.core.cutoff import (
    cv_select,
    default_cv_candidates,
    default_top_d,
    percentile_select,
    permutation_null,
    screen_alb,
    top_d_select,
    zero_select,
)
from albscreen.core.dataio import concat_rows, stratified_split
from albscreen.core.errors import InvalidArgumentError, NoViableCutoffError
from albscreen.core.simgen import generate
from albscreen.schemas.screening_schemas import (
    AlbResult,
    BandwidthSpec,
    CutoffKind,
    CutoffRule,
    NullSample,
    ScaleSource,
)
from albscreen.schemas.simulation_schemas import ScenarioConfig


def make_results(albs, degenerate=()):
    results = []
    for j, value in enumerate(albs):
        if j in degenerate:
            bandwidth = BandwidthSpec(value=None, scale=0.0, scale_source=ScaleSource.DEGENERATE)
            results.append(AlbResult(feature_index=j, alb=0.0, bandwidth=bandwidth, degenerate=True))
        else:
            bandwidth = BandwidthSpec(value=1.0, scale=1.0, scale_source=ScaleSource.ROBUST_IQR)
            results.append(AlbResult(feature_index=j, alb=value, bandwidth=bandwidth))
    return results


# ============================================================================
# TOP-D / ZERO
# ============================================================================

def test_top_d_keeps_largest():
    assert top_d_select(make_results([0.5, 0.1, -0.2, 0.3]), 2).selected == [0, 3]


def test_top_d_ties_go_to_smaller_index():
    assert top_d_select(make_results([0.5, 0.5, 0.1]), 1).selected == [0]
    assert top_d_select(make_results([0.1, 0.5, 0.5]), 1).selected == [1]


def test_top_d_full_selection_skips_degenerate():
    results = make_results([0.2, 0.0, -0.4, 0.1], degenerate={1})
    assert top_d_select(results, 3).selected == [0, 2, 3]
    with pytest.raises(InvalidArgumentError):
        top_d_select(results, 4)


def test_zero_select_is_strict():
    report = zero_select(make_results([0.2, -0.1, 0.0]))
    assert report.selected == [0]
    assert report.threshold == 0.0
    assert report.rule.kind == CutoffKind.ZERO


def test_zero_select_all_negative():
    assert zero_select(make_results([-0.3, -0.1])).selected == []


def test_default_top_d_rules():
    assert default_top_d(20, 20) == 40
    assert default_top_d(20, 20, "n_minus_1") == 39
    assert default_top_d(20, 20, "n_over_log_n") == 10
    assert default_top_d(20, 20, available=12) == 12
    with pytest.raises(InvalidArgumentError):
        default_top_d(20, 20, "sqrt")


def test_cutoff_rule_validation():
    with pytest.raises(ValidationError):
        CutoffRule.percentile(1.5, 10, 2)
    with pytest.raises(ValidationError):
        CutoffRule.cross_validated([0.1] * 11)
    assert CutoffRule.percentile(0.05, 10, 2).label() == "perm=0.05,10,2"
    assert CutoffRule.top_d(7).label() == "top-d=7"


# ============================================================================
# PERCENTILE
# ============================================================================

def test_percentile_threshold_uses_linear_interpolation():
    null = NullSample(values=[-0.1, 0.0, 0.1, 0.2], null_covariates=4, null_permutations=1, seed=0)
    report = percentile_select(make_results([0.18, 0.1]), null, 0.25)
    assert report.threshold == pytest.approx(0.125)
    assert report.selected == [0]
    assert report.null_summary.count == 4


def test_percentile_constant_null():
    null = NullSample(values=[0.05] * 6, null_covariates=3, null_permutations=2, seed=0)
    report = percentile_select(make_results([0.05, 0.06, 0.0]), null, 0.1)
    assert report.threshold == pytest.approx(0.05)
    assert report.selected == [1]


def test_percentile_monotone_in_alpha():
    rng = np.random.default_rng(1)
    null = NullSample(values=list(rng.normal(size=50)), null_covariates=25, null_permutations=2, seed=0)
    results = make_results(list(rng.normal(size=30)))
    strict = set(percentile_select(results, null, 0.05).selected)
    loose = set(percentile_select(results, null, 0.5).selected)
    assert strict <= loose


def test_null_sample_length_checked():
    with pytest.raises(ValidationError):
        NullSample(values=[0.1, 0.2, 0.3], null_covariates=2, null_permutations=2, seed=0)


# ============================================================================
# PERMUTATION NULL
# ============================================================================

def test_permutation_null_deterministic(null_dataset):
    first = permutation_null(null_dataset, null_dataset.p, 1, seed=42)
    second = permutation_null(null_dataset, null_dataset.p, 1, seed=42, threads=4)
    assert first == second
    assert len(first.values) == null_dataset.p


def test_permutation_null_shape_and_seed_sensitivity(null_dataset):
    null = permutation_null(null_dataset, 10, 3, seed=1)
    assert len(null.values) == 30
    assert len(set(null.covariates)) == 10
    assert null.values != permutation_null(null_dataset, 10, 3, seed=2).values


def test_permutation_null_bandwidth_is_label_free(null_dataset):
    null = permutation_null(null_dataset, 1, 1, seed=5)
    j = null.covariates[0]
    rng = np.random.default_rng(np.random.SeedSequence(5, spawn_key=(1, j, 0)))
    labels = rng.permutation(null_dataset.labels)
    # bandwidth recomputed under the permuted labels gives the same value
    assert feature_alb(null_dataset, j, labels=labels).alb == null.values[0]


def test_permutation_null_rejects_too_many_covariates(null_dataset):
    with pytest.raises(InvalidArgumentError):
        permutation_null(null_dataset, null_dataset.p + 1, 1, seed=0)


def test_permutation_null_under_global_null(null_dataset):
    null = permutation_null(null_dataset, 60, 3, seed=9)
    q95 = np.quantile(null.values, 0.95)
    assert np.isfinite(q95)
    assert q95 < alb_upper_bound(20, 20)


@pytest.mark.slow
def test_percentile_survival_matches_alpha_under_global_null():
    kept = []
    for seed in range(50):
        data = generate(ScenarioConfig(scenario="location", m=20, n=20, p=60, r=0.0, seed=seed)).dataset
        null = permutation_null(data, data.p, 2, seed=1000 + seed)
        report = percentile_select(alb_all(data), null, 0.05)
        kept.append(len(report.selected) / data.p)
    # 3000 feature draws, inflated for the shared per-run threshold
    assert abs(float(np.mean(kept)) - 0.05) < 0.025


# ============================================================================
# CROSS-VALIDATED CUTOFF
# ============================================================================

def test_cv_single_zero_candidate_matches_zero_select(shape_sim):
    train_a, train_b = stratified_split(shape_sim.dataset, 0.5, seed=3)
    report = cv_select(train_a, train_b, candidates=[0.0])
    pooled = zero_select(alb_all(concat_rows(train_a, train_b)))
    assert report.threshold == 0.0
    assert report.selected == pooled.selected
    assert len(report.cv_scores) == 1


def test_cv_ties_choose_largest_cutoff(shape_sim):
    train_a, train_b = stratified_split(shape_sim.dataset, 0.5, seed=3)
    albs = sorted((r.alb for r in alb_all(train_a) if not r.degenerate), reverse=True)
    top, second = albs[0], albs[1]
    low = second + (top - second) / 3.0
    high = second + 2.0 * (top - second) / 3.0
    report = cv_select(train_a, train_b, candidates=[low, high])
    assert report.cv_scores[0].rand_index == report.cv_scores[1].rand_index
    assert report.threshold == high


def test_cv_no_viable_cutoff(shape_sim):
    train_a, train_b = stratified_split(shape_sim.dataset, 0.5, seed=3)
    with pytest.raises(NoViableCutoffError):
        cv_select(train_a, train_b, candidates=[5.0, 10.0])


def test_default_cv_candidates():
    grid = default_cv_candidates(make_results([-0.2, 0.1, 0.2, 0.3, 0.4, 0.5]))
    assert grid[0] == 0.0
    assert len(grid) == 4
    assert grid == sorted(grid)
    assert default_cv_candidates(make_results([-0.2, -0.1])) == [0.0]


def test_screen_alb_dispatch(shape_sim):
    data = shape_sim.dataset
    results = alb_all(data)
    assert screen_alb(data, CutoffRule.zero(), results=results).selected == zero_select(results).selected
    assert screen_alb(data, CutoffRule.top_d(5), results=results).n_selected == 5
    perm = screen_alb(data, CutoffRule.percentile(0.05, 20, 2, seed=4), results=results)
    assert perm.null_summary.count == 40
    cv = screen_alb(data, CutoffRule.cross_validated([0.0, 0.05], seed=1))
    assert cv.threshold in (0.0, 0.05)
