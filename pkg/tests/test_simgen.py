"""Synthetic data generation"""

import numpy as np
import pytest
from pydantic import ValidationError

from albscreen.core.dataio import load_csv, load_mask
from albscreen.core.simgen import (
    generate,
    generate_train_test,
    importance_mask,
    sample_mixture,
    sample_student_t,
    write_simulated,
)
from albscreen.schemas.simulation_schemas import ScenarioConfig


def config(**overrides):
    values = dict(scenario="location", m=6, n=4, p=12, r=0.5, seed=42)
    values.update(overrides)
    return ScenarioConfig(**values)


def test_layout_and_labels():
    sim = generate(config())
    data = sim.dataset
    assert data.features.shape == (10, 12)
    assert data.labels.tolist() == [0] * 4 + [1] * 6
    assert (data.n, data.m) == (4, 6)
    assert sim.important_mask.shape == (12,)


def test_same_seed_is_bitwise_identical():
    a = generate(config(scenario="shape"))
    b = generate(config(scenario="shape"))
    assert np.array_equal(a.dataset.features, b.dataset.features)
    assert np.array_equal(a.important_mask, b.important_mask)


def test_different_seed_differs():
    a = generate(config(seed=1))
    b = generate(config(seed=2))
    assert not np.array_equal(a.dataset.features, b.dataset.features)


def test_worker_count_does_not_change_output():
    cfg = config(p=30)
    assert np.array_equal(generate(cfg, threads=1).dataset.features, generate(cfg, threads=4).dataset.features)


def test_mask_extremes():
    assert not importance_mask(config(r=0.0)).any()
    assert importance_mask(config(r=1.0)).all()


def test_mask_independent_of_scenario():
    assert np.array_equal(importance_mask(config(scenario="scale")), importance_mask(config(scenario="shape")))


def test_unimportant_columns_identical_across_scenarios():
    location = generate(config(r=0.0, scenario="location")).dataset.features
    scale = generate(config(r=0.0, scenario="scale")).dataset.features
    assert np.array_equal(location, scale)


def test_train_test_share_mask():
    train, test = generate_train_test(config(), test_m=7, test_n=5)
    assert np.array_equal(train.important_mask, test.important_mask)
    assert (test.dataset.n, test.dataset.m) == (5, 7)
    assert np.array_equal(train.dataset.features, generate(config()).dataset.features)
    assert not np.array_equal(train.dataset.features[:5], test.dataset.features[:5])


def test_invalid_config():
    with pytest.raises(ValidationError):
        config(r=1.5)
    with pytest.raises(ValidationError):
        config(m=1)
    with pytest.raises(ValidationError):
        config(p=0)


def test_write_simulated(tmp_path):
    sim = generate(config())
    csv_path, mask_path = write_simulated(sim, tmp_path / "sim")
    assert csv_path.name == "sim.csv"
    assert mask_path.name == "sim.mask.txt"
    assert np.array_equal(load_mask(mask_path), sim.important_mask)
    assert np.array_equal(load_csv(csv_path).features, sim.dataset.features)


def test_important_count_is_binomial():
    count = int(importance_mask(config(p=1000, r=0.3, seed=5)).sum())
    assert 240 <= count <= 360


@pytest.mark.slow
def test_scenario_moments():
    n = 4000
    location = generate(config(m=n, n=n, p=3, r=1.0, scenario="location")).dataset.features
    assert abs(location[:n].mean()) < 0.1
    assert abs(location[n:].mean() - 1.0) < 0.1

    scale = generate(config(m=n, n=n, p=3, r=1.0, scenario="scale")).dataset.features
    assert abs(scale[:n].std() - 1.0) < 0.1
    assert abs(scale[n:].std() - 3.0) < 0.2

    rng = np.random.default_rng(0)
    t = sample_student_t(rng, 200_000, 4.0)
    assert abs(np.median(t)) < 0.02
    assert abs(np.mean(np.abs(t) < 2.776) - 0.95) < 0.01
    mixture = sample_mixture(rng, 200_000, 2.5)
    assert abs(mixture.var() - 7.25) < 0.15
    assert abs(np.mean(mixture > 0) - 0.5) < 0.01


@pytest.mark.slow
def test_columns_uncorrelated():
    data = generate(config(m=500, n=500, p=20, r=0.0)).dataset.features
    corr = np.corrcoef(data, rowvar=False)
    off_diagonal = corr[~np.eye(20, dtype=bool)]
    assert np.max(np.abs(off_diagonal)) < 0.15
