"""
Simulation studies
==================
Every study is a pure function of its ExperimentSpec: replication seeds derive from
the ExperimentSpec seed via SeedSequence(seed, spawn_key=(size_index, replication)),
replications run independently and results are emitted as tidy pandas
frames (one row per replication x method x metric), so rerunning gives
byte-identical CSV output at any worker count.

The classifier used throughout is the KDE Bayes classifier.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from albscreen.core import bayes
from albscreen.core.alb import alb_all
from albscreen.core.cutoff import (
    cv_select,
    default_top_d,
    percentile_select,
    permutation_null,
    screen_alb,
    top_d_select,
    zero_select,
)
from albscreen.core.dataio import Dataset, drop_constant_features, stratified_split
from albscreen.core.errors import NoViableCutoffError
from albscreen.core.metrics import rand_index, screening_quality
from albscreen.core.parallel import run_parallel
from albscreen.core.simgen import generate, generate_train_test
from albscreen.core.ttest import ttest_screen
from albscreen.schemas.screening_schemas import CutoffKind, CutoffRule, TTestMode
from albscreen.schemas.simulation_schemas import ExperimentSpec, HoldoutSpec

logger = logging.getLogger(__name__)

METRIC_COLUMNS = [
    "experiment", "scenario", "size", "replication", "seed",
    "method", "rule", "classifier_train", "metric", "value",
]
CDF_COLUMNS = [
    "experiment", "scenario", "size", "replication", "seed",
    "group", "feature_index", "alb", "bandwidth", "ecdf",
]


# ============================================================================
# SEEDING / OUTPUT
# ============================================================================

def replication_seed(seed: int, *key: int) -> int:
    """64-bit seed for one replication, derived from the experiment seed"""
    state = np.random.SeedSequence(seed, spawn_key=tuple(key)).generate_state(1, dtype=np.uint64)
    return int(state[0])


def _tasks(spec: ExperimentSpec) -> List[Tuple[int, int, int, int]]:
    return [
        (size_index, size, rep, replication_seed(spec.seed, size_index, rep))
        for size_index, size in enumerate(spec.sizes)
        for rep in range(spec.replications)
    ]


def write_tidy_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False)
    logger.info(f"✅ Wrote {len(frame)} rows to {path}")
    return path


def _metric_rows(base: Dict, method: str, rule: str, classifier_train: str, metrics: Dict[str, float]) -> List[Dict]:
    return [
        {**base, "method": method, "rule": rule, "classifier_train": classifier_train,
         "metric": name, "value": float(value)}
        for name, value in metrics.items()
    ]


# ============================================================================
# CDF STUDY
# ============================================================================

def run_cdf_study(spec: ExperimentSpec, threads: Optional[int] = None) -> pd.DataFrame:
    """
    ALB values of important, unimportant and label-permuted features

    The permuted group scores every non-constant feature under
    spec.null_permutations label permutations (3 by default). Rows are
    sorted by ALB within each (size, replication, group) and carry the
    empirical CDF height.
    """
    def one_replication(task) -> List[Dict]:
        size_index, size, rep, seed = task
        sim = generate(spec.scenario_config(size, seed), threads=1)
        data = sim.dataset
        base = {"experiment": "cdf", "scenario": spec.scenario.value, "size": size,
                "replication": rep, "seed": seed}
        results = alb_all(data, threads=1)

        groups: Dict[str, List[Tuple[int, float, Optional[float]]]] = {"important": [], "unimportant": []}
        for r in results:
            if r.degenerate:
                continue
            group = "important" if sim.important_mask[r.feature_index] else "unimportant"
            groups[group].append((r.feature_index, r.alb, r.bandwidth.value))

        usable = sum(1 for r in results if not r.degenerate)
        groups["permuted"] = []
        if usable:
            null = permutation_null(data, usable, spec.null_permutations, seed, threads=1)
            bandwidths = {r.feature_index: r.bandwidth.value for r in results}
            groups["permuted"] = [
                (int(j), value, bandwidths[int(j)])
                for j, value in zip(np.repeat(null.covariates, spec.null_permutations), null.values)
            ]

        rows = []
        for group, entries in groups.items():
            entries = sorted(entries, key=lambda e: (e[1], e[0]))
            for rank, (j, value, bandwidth) in enumerate(entries, start=1):
                rows.append({**base, "group": group, "feature_index": int(j), "alb": float(value),
                             "bandwidth": bandwidth, "ecdf": rank / len(entries)})
        return rows

    per_task = run_parallel(one_replication, _tasks(spec), threads)
    return pd.DataFrame([row for rows in per_task for row in rows], columns=CDF_COLUMNS)


# ============================================================================
# SCREENING COMPARISON
# ============================================================================

def default_compare_rules(size: int, p: int) -> List[CutoffRule]:
    """Permutation 95th percentile (d = 2 per variable), top n + m, and zero"""
    return [
        CutoffRule.percentile(0.05, p, 2),
        CutoffRule.top_d(default_top_d(size, size, available=p)),
        CutoffRule.zero(),
    ]


def _seeded(rule: CutoffRule, seed: int, available: int) -> CutoffRule:
    update = {"seed": seed}
    if rule.kind == CutoffKind.PERCENTILE:
        update["null_covariates"] = min(rule.null_covariates, available)
    if rule.kind == CutoffKind.TOP_D:
        update["d"] = min(rule.d, available)
    return rule.model_copy(update=update)


def _score_selection(train: Dataset, test: Dataset, selected: Sequence[int], mask: np.ndarray) -> Dict[str, float]:
    model = bayes.fit(train, selected)
    quality = screening_quality(selected, mask)
    return {
        "rand_index": rand_index(bayes.predict_many(model, test.features), test.labels),
        "n_selected": len(selected),
        "important_surviving": quality.recall,
        "unimportant_surviving": quality.unimportant_surviving,
    }


def run_screen_compare(spec: ExperimentSpec, threads: Optional[int] = None) -> pd.DataFrame:
    """
    No screening vs t-test screening vs ALB screening, each followed by the
    KDE Bayes classifier, scored on a balanced independent test set
    """
    ttest_modes = spec.ttest_modes or [TTestMode.p_value_below(0.005)]

    def one_replication(task) -> List[Dict]:
        size_index, size, rep, seed = task
        test_size = spec.test_size or size
        train_sim, test_sim = generate_train_test(spec.scenario_config(size, seed), test_size, test_size, threads=1)
        train, test, mask = train_sim.dataset, test_sim.dataset, train_sim.important_mask
        base = {"experiment": "compare", "scenario": spec.scenario.value, "size": size,
                "replication": rep, "seed": seed}

        rows = _metric_rows(base, "none", "all", "full",
                            _score_selection(train, test, range(train.p), mask))
        for mode in ttest_modes:
            report = ttest_screen(train, mode)
            rows += _metric_rows(base, "ttest", mode.label(), "full",
                                 _score_selection(train, test, report.selected, mask))

        results = alb_all(train, threads=1)
        available = sum(1 for r in results if not r.degenerate)
        for rule in spec.cutoff_rules or default_compare_rules(size, spec.p):
            rule = _seeded(rule, seed, available)
            try:
                selected = screen_alb(train, rule, threads=1, results=results).selected
            except NoViableCutoffError:
                selected = []
            rows += _metric_rows(base, "alb", rule.label(), "full",
                                 _score_selection(train, test, selected, mask))
        return rows

    per_task = run_parallel(one_replication, _tasks(spec), threads)
    return pd.DataFrame([row for rows in per_task for row in rows], columns=METRIC_COLUMNS)


# ============================================================================
# BAYES CLASSIFIER CURVE
# ============================================================================

def run_bayes_curve(spec: ExperimentSpec, threads: Optional[int] = None) -> pd.DataFrame:
    """
    Rand index of zero-cutoff ALB screening plus the KDE Bayes classifier
    per training size, on balanced test sets of the same size
    """
    def one_replication(task) -> List[Dict]:
        size_index, size, rep, seed = task
        test_size = spec.test_size or size
        train_sim, test_sim = generate_train_test(spec.scenario_config(size, seed), test_size, test_size, threads=1)
        base = {"experiment": "bayes-curve", "scenario": spec.scenario.value, "size": size,
                "replication": rep, "seed": seed}
        report = zero_select(alb_all(train_sim.dataset, threads=1))
        metrics = _score_selection(train_sim.dataset, test_sim.dataset, report.selected, train_sim.important_mask)
        return _metric_rows(base, "alb", report.rule.label(), "full", metrics)

    per_task = run_parallel(one_replication, _tasks(spec), threads)
    return pd.DataFrame([row for rows in per_task for row in rows], columns=METRIC_COLUMNS)


def perfect_fraction(frame: pd.DataFrame) -> pd.Series:
    """Per training size, the fraction of replications with Rand index 1"""
    rand = frame[frame["metric"] == "rand_index"]
    return rand.groupby("size")["value"].apply(lambda v: float(np.mean(v == 1.0)))


def mean_metric(frame: pd.DataFrame, metric: str = "rand_index") -> pd.Series:
    """Mean of a metric per (size, method, rule)"""
    subset = frame[frame["metric"] == metric]
    return subset.groupby(["size", "method", "rule"])["value"].mean()


# ============================================================================
# HOLDOUT COMPARISON ON REAL DATA
# ============================================================================

def _holdout_screens(
        training: Dataset,
        small_a: Dataset,
        small_b: Dataset,
        spec: HoldoutSpec,
        seed: int,
) -> List[Tuple[str, str, List[int]]]:
    results = alb_all(training, threads=1)
    available = sum(1 for r in results if not r.degenerate)
    top_d = default_top_d(training.m, training.n, available=available)
    null_covariates = min(spec.null_covariates or available, available)

    screens: List[Tuple[str, str, List[int]]] = [("none", "all", list(range(training.p)))]
    report = top_d_select(results, top_d)
    screens.append(("alb", report.rule.label(), report.selected))
    null = permutation_null(training, null_covariates, spec.null_permutations, seed, threads=1)
    report = percentile_select(results, null, spec.alpha)
    screens.append(("alb", report.rule.label(), report.selected))
    try:
        report = cv_select(small_a, small_b, threads=1, seed=seed)
        screens.append(("alb", "cv", report.selected))
    except NoViableCutoffError:
        screens.append(("alb", "cv", []))
    report = zero_select(results)
    screens.append(("alb", report.rule.label(), report.selected))
    for mode in (TTestMode.top_k(min(top_d, training.p)), TTestMode.p_value_below(spec.ttest_alpha)):
        report = ttest_screen(training, mode)
        screens.append(("ttest", mode.label(), report.selected))
    return screens


def run_holdout_compare(dataset: Dataset, spec: HoldoutSpec, threads: Optional[int] = None) -> pd.DataFrame:
    """
    Nested-split comparison on a labeled dataset

    Per replication: split off a validation part, split the remaining
    training part in halves, screen the training part with every method,
    fit the classifier on the first half and on the full training part, and
    score the Rand index on the validation part.
    """
    dataset, _ = drop_constant_features(dataset)

    def one_replication(rep: int) -> List[Dict]:
        seed = replication_seed(spec.seed, rep)
        validation, training = stratified_split(dataset, spec.validation_fraction, seed)
        small_a, small_b = stratified_split(training, 0.5, replication_seed(seed, 1))
        base = {"experiment": "holdout", "scenario": "data", "size": training.n_rows,
                "replication": rep, "seed": seed}
        rows = []
        for method, rule, selected in _holdout_screens(training, small_a, small_b, spec, seed):
            for label, fit_on in (("half", small_a), ("full", training)):
                model = bayes.fit(fit_on, selected)
                predicted = bayes.predict_many(model, validation.features)
                rows += _metric_rows(base, method, rule, label, {
                    "rand_index": rand_index(predicted, validation.labels),
                    "n_selected": len(selected),
                })
        return rows

    per_rep = run_parallel(one_replication, range(spec.replications), threads)
    return pd.DataFrame([row for rows in per_rep for row in rows], columns=METRIC_COLUMNS)


EXPERIMENTS = {
    "cdf": run_cdf_study,
    "compare": run_screen_compare,
    "bayes-curve": run_bayes_curve,
}
