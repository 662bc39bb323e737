"""Welch t-test and t-test screening"""

import numpy as np
import pytest
from scipy import stats

from albscreen.core.dataio import Dataset
from albscreen.core.errors import InvalidArgumentError
from albscreen.core.simgen import generate
from albscreen.core.ttest import ttest_screen, welch_t, welch_t_all
from albscreen.schemas.screening_schemas import TTestMode
from albscreen.schemas.simulation_schemas import ScenarioConfig


def test_identical_samples():
    result = welch_t([0.0, 1.0, 2.0], [0.0, 1.0, 2.0])
    assert result.t == 0.0
    assert result.p_value == 1.0


def test_hand_computed_example():
    result = welch_t([1.0, 2.0, 3.0, 4.0], [2.0, 3.0, 4.0, 5.0])
    assert result.t == pytest.approx(-1.095445, abs=1e-5)
    assert result.df == pytest.approx(6.0, abs=1e-9)
    reference = stats.ttest_ind([1, 2, 3, 4], [2, 3, 4, 5], equal_var=False)
    assert result.p_value == pytest.approx(reference.pvalue, rel=1e-10)


def test_scale_shift_only_has_no_signal():
    x0 = np.array([-2.0, -1.0, 0.0, 1.0, 2.0])
    result = welch_t(x0, 3.0 * x0)
    assert result.t == pytest.approx(0.0, abs=1e-12)
    assert result.p_value == pytest.approx(1.0)


def test_constant_sample_conventions():
    equal = welch_t([2.0, 2.0, 2.0], [2.0, 2.0])
    assert (equal.t, equal.p_value) == (0.0, 1.0)
    different = welch_t([1.0, 1.0], [3.0, 3.0, 3.0])
    assert different.t == -np.inf
    assert different.p_value == 0.0


def test_needs_two_values_per_sample():
    with pytest.raises(InvalidArgumentError):
        welch_t([1.0], [1.0, 2.0])


def test_antisymmetry_and_affine_invariance():
    rng = np.random.default_rng(12)
    x0, x1 = rng.normal(size=8), rng.normal(1.0, 2.0, size=11)
    base = welch_t(x0, x1)
    swapped = welch_t(x1, x0)
    assert swapped.t == pytest.approx(-base.t)
    assert swapped.p_value == pytest.approx(base.p_value)
    shifted = welch_t(-2.5 * x0 + 4.0, -2.5 * x1 + 4.0)
    assert shifted.t == pytest.approx(-base.t, rel=1e-10)
    assert shifted.p_value == pytest.approx(base.p_value, rel=1e-10)


def test_vectorized_matches_scipy():
    sim = generate(ScenarioConfig(scenario="scale", m=12, n=9, p=30, r=0.5, seed=2))
    data = sim.dataset
    t, df, p = welch_t_all(data)
    reference = stats.ttest_ind(data.features[data.labels == 0], data.features[data.labels == 1],
                                axis=0, equal_var=False)
    assert np.allclose(t, reference.statistic, rtol=1e-10)
    assert np.allclose(p, reference.pvalue, rtol=1e-9)
    assert np.all(df > 0)


def test_screen_top_k_exact_count_and_ties():
    features = np.array([
        [0.0, 1.0, 0.0],
        [1.0, 0.0, 1.0],
        [5.0, 0.0, 5.0],
        [6.0, 1.0, 6.0],
    ])
    data = Dataset(features=features, labels=[0, 0, 1, 1])
    report = ttest_screen(data, TTestMode.top_k(1))
    # columns 0 and 2 tie on |t|
    assert report.selected == [0]
    assert ttest_screen(data, TTestMode.top_k(3)).n_selected == 3
    with pytest.raises(InvalidArgumentError):
        ttest_screen(data, TTestMode.top_k(4))


def test_screen_p_value_mode(null_dataset):
    report = ttest_screen(null_dataset, TTestMode.p_value_below(0.05))
    assert all(r.p_value < 0.05 for r in report.ttest_results if r.feature_index in report.selected)
    assert report.n_selected <= 12
    assert report.rule.label() == "pvalue=0.05"


@pytest.mark.slow
def test_null_p_values_uniform():
    sim = generate(ScenarioConfig(scenario="location", m=20, n=20, p=10_000, r=0.0, seed=77))
    _, _, p = welch_t_all(sim.dataset)
    assert stats.kstest(p, "uniform").statistic < 0.05
