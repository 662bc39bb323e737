"""KDE Bayes classifier"""

import logging
import math

import numpy as np
import pytest

from albscreen.core import bayes
from albscreen.core.dataio import Dataset
from albscreen.core.errors import InvalidArgumentError, SchemaError
from albscreen.core.kernel import kde_eval
from albscreen.core.serializer_utils import write_json
from tests.conftest import one_feature


def separated():
    return one_feature([-2.0, -1.9, -2.1, -2.05], [2.0, 1.9, 2.1, 2.05])


def test_empty_selection_returns_prior():
    data = Dataset(features=np.random.default_rng(0).normal(size=(7, 3)), labels=[0, 0, 0, 0, 1, 1, 1])
    model = bayes.fit(data, [])
    x = [0.1, 0.2, 0.3]
    assert bayes.posterior(model, x) == model.prior0
    assert bayes.predict(model, x) == 1


def test_priors_follow_class_counts():
    equal = bayes.fit(separated(), [0])
    assert (equal.prior0, equal.prior1) == (0.5, 0.5)
    rng = np.random.default_rng(1)
    data = Dataset(features=rng.normal(size=(72, 2)), labels=[0] * 47 + [1] * 25)
    model = bayes.fit(data, [])
    assert model.prior0 == pytest.approx(0.6528, abs=1e-4)
    assert model.prior1 == pytest.approx(0.3472, abs=1e-4)


def test_identical_class_data_gives_prior():
    model = bayes.fit(one_feature([-1.0, 1.0], [-1.0, 1.0]), [0])
    for x in (-3.0, 0.0, 0.7, 12.0):
        assert bayes.posterior(model, [x]) == 0.5


def test_separated_classes():
    model = bayes.fit(separated(), [0])
    assert bayes.posterior(model, [-2.0]) > 0.99
    assert bayes.predict(model, [-2.0]) == 0
    assert bayes.predict(model, [2.0]) == 1


def test_label_swap_flips_predictions():
    rng = np.random.default_rng(2)
    features = np.vstack([rng.normal(-1, 1, size=(10, 3)), rng.normal(1, 2, size=(10, 3))])
    labels = np.array([0] * 10 + [1] * 10)
    tests = rng.normal(size=(25, 3))
    forward = bayes.predict_many(bayes.fit(Dataset(features=features, labels=labels), [0, 1, 2]), tests)
    backward = bayes.predict_many(bayes.fit(Dataset(features=features, labels=1 - labels), [0, 1, 2]), tests)
    assert np.array_equal(forward, 1 - backward)


def test_log_space_matches_naive_product():
    rng = np.random.default_rng(3)
    features = np.vstack([rng.normal(0, 1, size=(8, 5)), rng.normal(0.5, 1.5, size=(6, 5))])
    data = Dataset(features=features, labels=[0] * 8 + [1] * 6)
    model = bayes.fit(data, range(5))
    x = rng.normal(size=5)
    f = g = 1.0
    for feature in model.features:
        f *= kde_eval(x[feature.feature_index], feature.class0_values, feature.class0_bandwidth)
        g *= kde_eval(x[feature.feature_index], feature.class1_values, feature.class1_bandwidth)
    naive = model.prior0 * f / (model.prior0 * f + model.prior1 * g)
    assert bayes.posterior(model, x) == pytest.approx(naive, rel=1e-9)


def test_many_features_stay_finite():
    rng = np.random.default_rng(4)
    features = np.vstack([rng.normal(0, 1, size=(10, 2000)), rng.normal(3, 1, size=(10, 2000))])
    model = bayes.fit(Dataset(features=features, labels=[0] * 10 + [1] * 10), range(2000))
    x = rng.normal(3, 1, size=(1, 2000))
    assert np.all(np.isfinite(bayes.log_density_gap(model, x)))
    p = bayes.posterior(model, x[0])
    assert 0.0 < p < 1.0
    assert bayes.predict(model, x[0]) == 1


def test_posterior_strictly_inside_unit_interval():
    rng = np.random.default_rng(6)
    features = np.vstack([rng.normal(0, 1, size=(10, 2000)), rng.normal(3, 1, size=(10, 2000))])
    model = bayes.fit(Dataset(features=features, labels=[0] * 10 + [1] * 10), range(2000))
    rows = np.vstack([rng.normal(0, 1, size=(3, 2000)), rng.normal(3, 1, size=(3, 2000))])
    gap = bayes.log_density_gap(model, rows)
    assert np.all(np.abs(gap) > 800)
    posteriors = bayes.posterior_many(model, rows)
    assert np.all(posteriors > 0.0)
    assert np.all(posteriors < 1.0)
    assert posteriors[0] == bayes.POSTERIOR_CEILING
    assert posteriors[-1] == bayes.POSTERIOR_FLOOR
    assert np.array_equal(bayes.predict_many(model, rows), [0, 0, 0, 1, 1, 1])


def test_uninformative_feature_barely_moves_posterior():
    rng = np.random.default_rng(5)
    shared = rng.normal(size=6)
    features = np.column_stack([
        np.concatenate([rng.normal(-1, 1, 6), rng.normal(1, 1, 6)]),
        np.concatenate([shared, shared]),
    ])
    data = Dataset(features=features, labels=[0] * 6 + [1] * 6)
    x = [0.3, 0.9]
    one = bayes.posterior(bayes.fit(data, [0]), x)
    both = bayes.posterior(bayes.fit(data, [0, 1]), x)
    assert abs(one - both) < 1e-10


def test_posterior_monotone_in_prior():
    model = bayes.fit(separated(), [0])
    low = model.model_copy(update={"prior0": 0.3, "prior1": 0.7})
    high = model.model_copy(update={"prior0": 0.6, "prior1": 0.4})
    for x in (-2.0, 0.0, 1.5):
        assert bayes.posterior(high, [x]) >= bayes.posterior(low, [x])


def test_constant_within_class_feature_dropped(caplog):
    features = np.array([[1.0, 0.1], [1.0, 0.4], [1.0, 0.2], [2.0, 0.9], [3.0, 0.8], [4.0, 0.7]])
    data = Dataset(features=features, labels=[0, 0, 0, 1, 1, 1])
    with caplog.at_level(logging.WARNING):
        model = bayes.fit(data, [0, 1])
    assert model.selected == [1]
    assert model.dropped[0].feature_index == 0
    assert "constant within class 0" in caplog.text


def test_missing_value_rejected():
    model = bayes.fit(separated(), [0])
    with pytest.raises(InvalidArgumentError):
        bayes.posterior(model, [math.nan])
    with pytest.raises(InvalidArgumentError):
        bayes.posterior(model, [0.0, 1.0])


def test_model_round_trip(tmp_path, shape_sim):
    data = shape_sim.dataset
    model = bayes.fit(data, shape_sim.important)
    path = bayes.save_model(model, tmp_path / "model.json")
    loaded = bayes.load_model(path)
    assert loaded == model
    assert np.array_equal(bayes.predict_many(loaded, data.features), bayes.predict_many(model, data.features))


def test_model_version_checked(tmp_path):
    model = bayes.fit(separated(), [0])
    path = write_json(model.model_copy(update={"schema_version": 99}), tmp_path / "model.json")
    with pytest.raises(SchemaError):
        bayes.load_model(path)
