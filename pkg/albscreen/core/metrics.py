"""
Classification and screening quality metrics

The Rand index here is plain two-class accuracy: the fraction of rows whose
predicted label equals the true label.
"""

from typing import Iterable, Sequence

import numpy as np
from sklearn.metrics import confusion_matrix

from albscreen.core.errors import InvalidArgumentError
from albscreen.schemas.evaluation_schemas import ConfusionCounts, ScreeningQuality


def _paired(pred: Sequence, truth: Sequence):
    pred = np.asarray(pred).ravel()
    truth = np.asarray(truth).ravel()
    if pred.shape != truth.shape:
        raise InvalidArgumentError(f"Length mismatch: {pred.size} predictions vs {truth.size} labels")
    if pred.size == 0:
        raise InvalidArgumentError("Metrics need at least one row")
    return pred, truth


def rand_index(pred: Sequence, truth: Sequence) -> float:
    """Fraction of positions where pred equals truth"""
    pred, truth = _paired(pred, truth)
    return float(np.count_nonzero(pred == truth) / pred.size)


def confusion(pred: Sequence, truth: Sequence, positive_label: int = 1) -> ConfusionCounts:
    """
    Confusion counts with the declared positive label

    Any label other than positive_label counts as negative.
    """
    pred, truth = _paired(pred, truth)
    pred_pos = pred == positive_label
    truth_pos = truth == positive_label
    cm = confusion_matrix(truth_pos, pred_pos, labels=[False, True])
    tn, fp, fn, tp = (int(v) for v in cm.ravel())
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def screening_quality(selected: Iterable[int], important_mask: Sequence[bool]) -> ScreeningQuality:
    """
    Compare a selected index set with the true importance mask

    Conventions: recall is 1 when nothing is important; precision is 1 when
    nothing is selected.

    Raises:
        InvalidArgumentError: an index falls outside the mask
    """
    mask = np.asarray(important_mask, dtype=bool).ravel()
    p = mask.size
    chosen = np.zeros(p, dtype=bool)
    for idx in selected:
        if not 0 <= int(idx) < p:
            raise InvalidArgumentError(f"Selected index {idx} out of range for {p} features")
        chosen[int(idx)] = True

    counts = confusion(chosen, mask, positive_label=True)
    n_important = counts.tp + counts.fn
    n_selected = counts.tp + counts.fp
    n_unimportant = counts.fp + counts.tn
    return ScreeningQuality(
        recall=counts.tp / n_important if n_important else 1.0,
        precision=counts.tp / n_selected if n_selected else 1.0,
        unimportant_surviving=counts.fp / n_unimportant if n_unimportant else 0.0,
        counts=counts,
    )
