"""
Dataset ingestion, preprocessing and splitting

CSV dialect: comma-separated, UTF-8, optional header row (detected when the
first row holds a non-numeric feature cell), scientific notation accepted.
Binary labels are mapped to 0/1 by sorted order of the original values
(numeric order when every label parses as a number); the mapping is kept
on the Dataset so reports can echo it.
"""

import hashlib
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from albscreen.core.errors import DataParseError, InvalidArgumentError, SchemaError

logger = logging.getLogger(__name__)

DEFAULT_LABEL_COLUMN = "label"


# ============================================================================
# DATASET
# ============================================================================

@dataclass(frozen=True)
class Dataset:
    """
    Feature matrix with binary labels.

    Rows are samples, columns are features. Label 0 is the class with n
    samples and label 1 the class with m samples. Arrays are read-only.
    """
    features: np.ndarray
    labels: np.ndarray
    feature_names: Tuple[str, ...] = ()
    label_mapping: Dict[str, int] = field(default_factory=dict)
    label_column: str = DEFAULT_LABEL_COLUMN

    def __post_init__(self):
        features = np.array(self.features, dtype=float, copy=True)
        if features.ndim == 1:
            features = features.reshape(-1, 1)
        if features.ndim != 2:
            raise InvalidArgumentError("features must be a 2-D matrix")
        labels = np.array(self.labels, copy=True).ravel()
        if labels.shape[0] != features.shape[0]:
            raise InvalidArgumentError(
                f"labels length {labels.shape[0]} does not match row count {features.shape[0]}"
            )
        if labels.size and not np.all(np.isin(labels, (0, 1))):
            raise InvalidArgumentError("labels must be 0 or 1")
        labels = labels.astype(np.int8)
        names = tuple(self.feature_names) or tuple(f"x{j}" for j in range(features.shape[1]))
        if len(names) != features.shape[1]:
            raise InvalidArgumentError("feature_names length does not match column count")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "label_mapping", dict(self.label_mapping))

    @property
    def n_rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def p(self) -> int:
        return int(self.features.shape[1])

    @property
    def n(self) -> int:
        """Count of label-0 samples"""
        return int(np.count_nonzero(self.labels == 0))

    @property
    def m(self) -> int:
        """Count of label-1 samples"""
        return int(np.count_nonzero(self.labels == 1))

    def column(self, j: int) -> np.ndarray:
        return self.features[:, j]

    def require_both_classes(self, minimum: int = 2) -> None:
        if self.n < minimum or self.m < minimum:
            raise InvalidArgumentError(
                f"Each class needs at least {minimum} samples (n={self.n}, m={self.m})"
            )

    def select_rows(self, rows: Sequence[int]) -> "Dataset":
        rows = np.asarray(rows, dtype=int)
        return Dataset(
            features=self.features[rows],
            labels=self.labels[rows],
            feature_names=self.feature_names,
            label_mapping=self.label_mapping,
            label_column=self.label_column,
        )

    def select_features(self, columns: Sequence[int]) -> "Dataset":
        columns = np.asarray(columns, dtype=int)
        return Dataset(
            features=self.features[:, columns],
            labels=self.labels,
            feature_names=tuple(self.feature_names[j] for j in columns),
            label_mapping=self.label_mapping,
            label_column=self.label_column,
        )

    def original_labels(self) -> List[str]:
        """Labels in their original text form (0/1 when no mapping is known)"""
        inverse = {v: k for k, v in self.label_mapping.items()}
        return [inverse.get(int(v), str(int(v))) for v in self.labels]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(self.features, columns=list(self.feature_names))
        frame[self.label_column] = self.original_labels()
        return frame


def concat_rows(first: Dataset, second: Dataset) -> Dataset:
    """Stack two datasets that share the same feature columns"""
    if first.feature_names != second.feature_names:
        raise SchemaError("Cannot combine datasets with different feature columns")
    return Dataset(
        features=np.vstack([first.features, second.features]),
        labels=np.concatenate([first.labels, second.labels]),
        feature_names=first.feature_names,
        label_mapping=first.label_mapping or second.label_mapping,
        label_column=first.label_column,
    )


# ============================================================================
# CSV INGESTION
# ============================================================================

def _is_number(text: str) -> bool:
    try:
        float(text)
    except (TypeError, ValueError):
        return False
    return True


def _sorted_label_values(values: Sequence[str]) -> List[str]:
    distinct = sorted(set(values))
    if all(_is_number(v) for v in distinct):
        return sorted(distinct, key=float)
    return distinct


@dataclass(frozen=True)
class RawTable:
    """Parsed CSV before labels are bound to 0/1"""
    features: np.ndarray
    feature_names: Tuple[str, ...]
    labels: Optional[List[str]]
    label_column: str


def read_table(
        path: Union[str, Path],
        label_column: Union[str, int, None] = DEFAULT_LABEL_COLUMN,
        has_header: Optional[bool] = None,
        require_labels: bool = True,
) -> RawTable:
    """
    Parse a CSV into numeric features and raw label strings.

    Args:
        path: file to read
        label_column: header name or 0-based column index of the labels
        has_header: force header handling; None auto-detects
        require_labels: raise when the label column is absent

    Raises:
        DataParseError: unreadable file, ragged rows, missing or non-numeric
            feature cells (the message names row and column)
        SchemaError: label column required but absent
    """
    path = Path(path)
    if not path.exists():
        raise DataParseError(f"Input file not found: {path}")
    try:
        raw = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, encoding="utf-8")
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataParseError(f"Could not read {path}: {e}")
    if raw.shape[0] == 0:
        raise DataParseError(f"No rows in {path}")

    first_row = [str(v).strip() for v in raw.iloc[0].tolist()]
    label_idx: Optional[int] = label_column if isinstance(label_column, int) else None

    if has_header is None:
        if isinstance(label_column, str):
            has_header = label_column in first_row or not all(_is_number(v) for v in first_row)
        else:
            has_header = any(not _is_number(v) for i, v in enumerate(first_row) if i != label_idx)

    if has_header:
        header = first_row
        body = raw.iloc[1:].reset_index(drop=True)
        line_offset = 2
    else:
        header = [f"x{j}" for j in range(raw.shape[1])]
        body = raw
        line_offset = 1

    if isinstance(label_column, str):
        label_idx = header.index(label_column) if label_column in header else None
    elif label_idx is not None and not 0 <= label_idx < raw.shape[1]:
        label_idx = None

    if label_idx is None and require_labels:
        raise SchemaError(f"Label column '{label_column}' not found in {path}")

    label_name = header[label_idx] if label_idx is not None else DEFAULT_LABEL_COLUMN
    if label_idx is not None and not has_header:
        label_name = DEFAULT_LABEL_COLUMN
    feature_cols = [j for j in range(raw.shape[1]) if j != label_idx]
    names = tuple(header[j] for j in feature_cols) if has_header else tuple(f"x{k}" for k in range(len(feature_cols)))

    matrix = np.empty((body.shape[0], len(feature_cols)), dtype=float)
    for k, j in enumerate(feature_cols):
        cells = body.iloc[:, j].astype(str).str.strip()
        parsed = pd.to_numeric(cells, errors="coerce")
        bad = np.flatnonzero(parsed.isna().to_numpy() | ~np.isfinite(parsed.to_numpy(dtype=float)))
        if bad.size:
            row = int(bad[0])
            what = "Missing value" if cells.iloc[row] == "" else f"Non-numeric value '{cells.iloc[row]}'"
            raise DataParseError(what, row=row + line_offset, column=names[k])
        matrix[:, k] = parsed.to_numpy(dtype=float)

    labels = None
    if label_idx is not None:
        labels = body.iloc[:, label_idx].astype(str).str.strip().tolist()
        for row, value in enumerate(labels):
            if value == "":
                raise DataParseError("Missing label", row=row + line_offset, column=label_name)

    return RawTable(features=matrix, feature_names=names, labels=labels, label_column=label_name)


def bind_labels(raw_labels: Sequence[str], label_mapping: Optional[Dict[str, int]] = None) -> Tuple[np.ndarray, Dict[str, int]]:
    """Map raw label strings to 0/1 (sorted order unless a mapping is given)"""
    if label_mapping:
        unknown = sorted(set(raw_labels) - set(label_mapping))
        if unknown:
            raise SchemaError(f"Labels {unknown} are not in the training label mapping {label_mapping}")
        mapping = dict(label_mapping)
    else:
        distinct = _sorted_label_values(raw_labels)
        if len(distinct) != 2:
            raise SchemaError(f"Expected exactly two distinct labels, found {len(distinct)}: {distinct[:5]}")
        mapping = {distinct[0]: 0, distinct[1]: 1}
    return np.array([mapping[v] for v in raw_labels], dtype=np.int8), mapping


def load_csv(
        path: Union[str, Path],
        label_column: Union[str, int] = DEFAULT_LABEL_COLUMN,
        has_header: Optional[bool] = None,
        label_mapping: Optional[Dict[str, int]] = None,
) -> Dataset:
    """
    Load a labeled CSV into a Dataset

    Args:
        path: CSV file
        label_column: header name or 0-based index of the label column
        has_header: force header handling; None auto-detects
        label_mapping: reuse an existing text -> 0/1 mapping (e.g. a
            training set's) instead of deriving one

    Returns:
        Dataset with row order preserved
    """
    table = read_table(path, label_column, has_header, require_labels=True)
    labels, mapping = bind_labels(table.labels, label_mapping)
    logger.info(
        f"✅ Loaded {path}: {table.features.shape[0]} rows x {table.features.shape[1]} features, "
        f"labels {mapping}"
    )
    return Dataset(
        features=table.features,
        labels=labels,
        feature_names=table.feature_names,
        label_mapping=mapping,
        label_column=table.label_column,
    )


def save_csv(dataset: Dataset, path: Union[str, Path]) -> Path:
    """Write a Dataset with a header row; floats use shortest round-trip repr"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    dataset.to_frame().to_csv(path, index=False)
    return path


def file_sha256(path: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


# ============================================================================
# IMPORTANCE MASK SIDECAR
# ============================================================================

def save_mask(mask: Sequence[bool], path: Union[str, Path]) -> Path:
    """One 0/1 per feature, newline-separated"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{int(bool(v))}\n" for v in mask), encoding="utf-8")
    return path


def load_mask(path: Union[str, Path]) -> np.ndarray:
    lines = [line.strip() for line in Path(path).read_text(encoding="utf-8").splitlines() if line.strip()]
    for row, value in enumerate(lines, start=1):
        if value not in ("0", "1"):
            raise DataParseError(f"Mask entries must be 0 or 1, got '{value}'", row=row)
    return np.array([value == "1" for value in lines], dtype=bool)


# ============================================================================
# PREPROCESSING
# ============================================================================

def drop_constant_features(dataset: Dataset) -> Tuple[Dataset, List[int]]:
    """
    Remove columns whose values are all identical

    Returns:
        (reduced dataset, removed column indices in the input)
    """
    if dataset.n_rows == 0:
        return dataset, []
    constant = np.ptp(dataset.features, axis=0) == 0.0
    removed = [int(j) for j in np.flatnonzero(constant)]
    if not removed:
        return dataset, []
    logger.info(f"⚠️  Dropping {len(removed)} constant feature(s) of {dataset.p}")
    return dataset.select_features(np.flatnonzero(~constant)), removed


def stratified_split(dataset: Dataset, fraction: float, seed: int) -> Tuple[Dataset, Dataset]:
    """
    Per-class random partition

    Each class contributes floor(count * fraction + 0.5) rows to the first
    part and the rest to the second. Both parts keep the input row order.

    Raises:
        InvalidArgumentError: fraction outside (0, 1), or a class too small to
            leave at least one row on each side
    """
    if not 0.0 < fraction < 1.0:
        raise InvalidArgumentError(f"fraction must be in (0, 1), got {fraction}")
    rng = np.random.default_rng(seed)
    first: List[int] = []
    second: List[int] = []
    for label in (0, 1):
        rows = np.flatnonzero(dataset.labels == label)
        take = int(math.floor(rows.size * fraction + 0.5))
        if rows.size < 2 or not 1 <= take <= rows.size - 1:
            raise InvalidArgumentError(
                f"Class {label} with {rows.size} rows cannot be split at fraction {fraction}"
            )
        shuffled = rng.permutation(rows)
        first.extend(shuffled[:take].tolist())
        second.extend(shuffled[take:].tolist())
    return dataset.select_rows(sorted(first)), dataset.select_rows(sorted(second))
