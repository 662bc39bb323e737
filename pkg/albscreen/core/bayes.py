"""
KDE Bayes classifier
====================
Per-feature, per-class kernel density estimates combined under an
independence assumption:

    p(x) = prior0 * prod f_j(x_j) / (prior0 * prod f_j(x_j) + prior1 * prod g_j(x_j))

f_j and g_j are full-sample KDEs of the class-0 and class-1 training values
with per-class plug-in bandwidths. Everything is evaluated in log space.
A row is assigned label 0 iff p(x) > prior0, i.e. iff the summed class-0
log density strictly exceeds the class-1 one; ties go to label 1.
"""

import logging
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np
from pydantic import ValidationError
from scipy.special import expit

from albscreen.core.bandwidth import plugin_bandwidth
from albscreen.core.dataio import Dataset
from albscreen.core.errors import DataParseError, InvalidArgumentError, SchemaError
from albscreen.core.kernel import KernelId, log_kde_eval_many
from albscreen.core.serializer_utils import write_json
from albscreen.schemas.model_schemas import (
    MODEL_SCHEMA_VERSION,
    BayesKdeModel,
    DroppedFeature,
    FeatureDensity,
)

logger = logging.getLogger(__name__)

# posteriors stay strictly inside (0, 1)
POSTERIOR_FLOOR = float(np.nextafter(0.0, 1.0))
POSTERIOR_CEILING = float(np.nextafter(1.0, 0.0))


# ============================================================================
# FIT
# ============================================================================

def fit(
        train: Dataset,
        selected: Iterable[int],
        kernel: Union[KernelId, str] = KernelId.HALL,
) -> BayesKdeModel:
    """
    Fit the classifier on the selected columns of train

    Args:
        train: labeled training data, both classes with >= 2 rows
        selected: column indices to use (duplicates ignored)
        kernel: Hall by default

    Returns:
        BayesKdeModel; features constant within a class are dropped and
        listed in model.dropped
    """
    train.require_both_classes(2)
    indices = sorted({int(j) for j in selected})
    for j in indices:
        if not 0 <= j < train.p:
            raise InvalidArgumentError(f"Selected index {j} out of range for {train.p} features")

    rows0 = train.labels == 0
    rows1 = train.labels == 1
    features: List[FeatureDensity] = []
    dropped: List[DroppedFeature] = []
    for j in indices:
        values0 = train.features[rows0, j]
        values1 = train.features[rows1, j]
        b0 = plugin_bandwidth(values0, values0.size)
        b1 = plugin_bandwidth(values1, values1.size)
        if b0.is_degenerate or b1.is_degenerate:
            which = "class 0" if b0.is_degenerate else "class 1"
            logger.warning(f"⚠️  Feature {j} ({train.feature_names[j]}) is constant within {which}; dropped")
            dropped.append(DroppedFeature(
                feature_index=j,
                feature_name=train.feature_names[j],
                reason=f"constant within {which}",
            ))
            continue
        features.append(FeatureDensity(
            feature_index=j,
            feature_name=train.feature_names[j],
            class0_values=values0.tolist(),
            class1_values=values1.tolist(),
            class0_bandwidth=b0.value,
            class1_bandwidth=b1.value,
        ))

    total = train.n + train.m
    model = BayesKdeModel(
        kernel=KernelId(kernel),
        prior0=train.n / total,
        prior1=train.m / total,
        n=train.n,
        m=train.m,
        label_mapping=train.label_mapping,
        feature_names=list(train.feature_names),
        features=features,
        dropped=dropped,
    )
    logger.info(f"✅ Fitted KDE Bayes classifier on {len(features)} feature(s), priors ({model.prior0:.4f}, {model.prior1:.4f})")
    return model


# ============================================================================
# POSTERIOR / PREDICT
# ============================================================================

def _as_rows(model: BayesKdeModel, rows) -> np.ndarray:
    x = np.atleast_2d(np.asarray(rows, dtype=float))
    if x.shape[1] != len(model.feature_names):
        raise InvalidArgumentError(
            f"Expected {len(model.feature_names)} feature values per row, got {x.shape[1]}"
        )
    used = model.selected
    if used and not np.all(np.isfinite(x[:, used])):
        raise InvalidArgumentError("Missing or non-finite value for a model feature")
    return x


def log_density_gap(model: BayesKdeModel, rows) -> np.ndarray:
    """sum_j log f_j(x_j) - sum_j log g_j(x_j) for each row"""
    x = _as_rows(model, rows)
    gap = np.zeros(x.shape[0])
    for feature in model.features:
        column = x[:, feature.feature_index]
        gap += log_kde_eval_many(column, feature.class0_values, feature.class0_bandwidth, model.kernel)
        gap -= log_kde_eval_many(column, feature.class1_values, feature.class1_bandwidth, model.kernel)
    return gap


def posterior_many(model: BayesKdeModel, rows) -> np.ndarray:
    """Posterior probability of label 0 for each row"""
    gap = log_density_gap(model, rows)
    prior_log_odds = np.log(model.prior0) - np.log(model.prior1)
    # a zero gap means the densities carry no information
    informed = np.clip(expit(prior_log_odds + gap), POSTERIOR_FLOOR, POSTERIOR_CEILING)
    return np.where(gap == 0.0, model.prior0, informed)


def predict_many(model: BayesKdeModel, rows) -> np.ndarray:
    """Labels for each row: 0 iff posterior > prior0"""
    return np.where(log_density_gap(model, rows) > 0.0, 0, 1).astype(np.int8)


def posterior(model: BayesKdeModel, x: Sequence[float]) -> float:
    """
    Posterior probability that x belongs to label 0 (the n-count class)

    Args:
        model: fitted classifier
        x: one value per training column

    Returns:
        value in (0, 1); exactly prior0 when the model has no features
    """
    return float(posterior_many(model, [x])[0])


def predict(model: BayesKdeModel, x: Sequence[float]) -> int:
    return int(predict_many(model, [x])[0])


# ============================================================================
# PERSISTENCE
# ============================================================================

def save_model(model: BayesKdeModel, path: Union[str, Path]) -> Path:
    return write_json(model, path)


def load_model(path: Union[str, Path]) -> BayesKdeModel:
    """
    Read a model JSON document

    Raises:
        DataParseError: missing file
        SchemaError: unknown schema version or malformed document
    """
    path = Path(path)
    if not path.exists():
        raise DataParseError(f"Model file not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        model = BayesKdeModel.model_validate_json(text)
    except ValidationError as e:
        raise SchemaError(f"Invalid model file {path}: {e.error_count()} validation error(s)")
    if model.schema_version != MODEL_SCHEMA_VERSION:
        raise SchemaError(f"Unsupported model schema version {model.schema_version}")
    return model
