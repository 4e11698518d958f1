"""Data model shared by every clustering algorithm in the package.

Entities are rows of an (n, m) float64 matrix. All inter-entity
dissimilarities used by the clustering algorithms are *squared* Euclidean
distances; squaring preserves neighbour rankings, so only radius-type
thresholds change scale, and the sweep grids are expressed in the same
squared units.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DataSet",
    "StandardizationReport",
    "as_feature_matrix",
    "load_dataset",
    "pairwise_distance_extrema",
    "pairwise_squared_distances",
    "range_standardize",
    "row_squared_distances",
    "squared_euclidean",
]


def as_feature_matrix(values) -> np.ndarray:
    """Validate and return a feature matrix as a float64 (n, m) array.

    Requires n >= 1, m >= 1 and every value finite. Always returns a copy,
    so callers may treat the result as immutable.
    """
    matrix = np.array(values, dtype=np.float64, copy=True)
    if matrix.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {matrix.shape}")
    n, m = matrix.shape
    if n < 1 or m < 1:
        raise ValueError(f"feature matrix must be at least 1x1, got {n}x{m}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("feature matrix contains NaN or infinite values")
    return matrix


@dataclass
class DataSet:
    """A feature matrix with an optional ground-truth labelling.

    Attributes
    ----------
    matrix : (n, m) float64 array of entities.
    true_labels : optional (n,) integer array of class ids.
    name : text identifier used in reports.
    """

    matrix: np.ndarray
    true_labels: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        self.matrix = as_feature_matrix(self.matrix)
        if self.true_labels is not None:
            labels = np.asarray(self.true_labels, dtype=np.int64)
            if labels.shape != (self.matrix.shape[0],):
                raise ValueError(
                    f"true_labels has {labels.shape[0] if labels.ndim == 1 else labels.shape} "
                    f"entries, expected {self.matrix.shape[0]}"
                )
            self.true_labels = labels

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def m(self) -> int:
        return self.matrix.shape[1]


@dataclass(frozen=True)
class StandardizationReport:
    """Per-feature statistics (in original units) of a range standardization."""

    mean: np.ndarray
    minimum: np.ndarray
    maximum: np.ndarray
    feature_range: np.ndarray = field(init=False)

    def __post_init__(self):
        rng = self.maximum - self.minimum
        if np.any(rng < 0):
            raise ValueError("feature range must be nonnegative")
        object.__setattr__(self, "feature_range", rng)


def squared_euclidean(a, b) -> float:
    """Squared Euclidean distance between two entity rows.

    Symmetric, and zero iff the rows are componentwise equal.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    d = a - b
    return float(np.sum(d * d))


def row_squared_distances(rows: np.ndarray, point: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance from `point` to each row of `rows`.

    Every neighbour backend funnels its distance evaluations through this
    one expression, so equal pairs always produce bit-identical floats and
    index tie-breaking is exact.
    """
    diff = rows - point
    return np.einsum("ij,ij->i", diff, diff)


def pairwise_squared_distances(matrix: np.ndarray) -> np.ndarray:
    """Full (n, n) matrix of squared Euclidean distances."""
    x = np.asarray(matrix, dtype=np.float64)
    n = x.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        out[i] = row_squared_distances(x, x[i])
    return out


def range_standardize(matrix: np.ndarray) -> tuple[np.ndarray, StandardizationReport]:
    """Standardize each feature by its range: (y - mean) / (max - min).

    Constant features (range 0) map to all-zeros: they carry no cluster
    information, and erroring would make real datasets unloadable. The
    input is left unmodified.
    """
    x = as_feature_matrix(matrix)
    mean = x.mean(axis=0)
    minimum = x.min(axis=0)
    maximum = x.max(axis=0)
    rng = maximum - minimum
    safe = np.where(rng > 0, rng, 1.0)
    standardized = (x - mean) / safe
    standardized[:, rng == 0] = 0.0
    return standardized, StandardizationReport(mean=mean, minimum=minimum, maximum=maximum)


def pairwise_distance_extrema(matrix: np.ndarray) -> tuple[float, float]:
    """(min, max) squared Euclidean distance over all pairs i != j.

    The minimum is 0 when the data contains duplicate rows. Requires
    n >= 2. Used to bound the epsilon sweep grid.
    """
    x = as_feature_matrix(matrix)
    n = x.shape[0]
    if n < 2:
        raise ValueError("pairwise extrema need at least 2 entities")
    lo = np.inf
    hi = -np.inf
    for i in range(n - 1):
        d = row_squared_distances(x[i + 1 :], x[i])
        lo = min(lo, float(d.min()))
        hi = max(hi, float(d.max()))
    return lo, hi


def _parse_float(token: str, row_number: int, column: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ValueError(
            f"row {row_number}: non-numeric feature value {token!r} in column {column}"
        ) from None
    if not np.isfinite(value):
        raise ValueError(f"row {row_number}: non-finite feature value {token!r} in column {column}")
    return value


def _parse_label(token: str, row_number: int) -> int:
    try:
        value = float(token)
    except ValueError:
        raise ValueError(f"row {row_number}: non-numeric label {token!r}") from None
    if value != int(value):
        raise ValueError(f"row {row_number}: label {token!r} is not an integer")
    return int(value)


def load_dataset(
    path,
    has_header: bool = False,
    label_column: int | None = None,
    name: str | None = None,
) -> DataSet:
    """Load a CSV of entities: one row per entity, comma-separated real features.

    Parameters
    ----------
    path : CSV file; UTF-8, '.' decimal point.
    has_header : skip the first row.
    label_column : optional column index holding integer class ids
        (negative indices count from the end, -1 = last column).
    name : dataset identifier; defaults to the file stem.

    Raises
    ------
    ValueError
        On malformed rows, non-numeric features, or inconsistent column
        counts, naming the offending row number.
    """
    rows: list[list[float]] = []
    labels: list[int] = []
    width: int | None = None
    label_idx: int | None = None
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        for row_number, record in enumerate(reader, start=1):
            if row_number == 1 and has_header:
                continue
            if not record or (len(record) == 1 and not record[0].strip()):
                continue  # blank line
            if width is None:
                width = len(record)
                if label_column is not None:
                    label_idx = label_column if label_column >= 0 else width + label_column
                    if not 0 <= label_idx < width:
                        raise ValueError(
                            f"label column {label_column} out of range for {width} columns"
                        )
                    if width < 2:
                        raise ValueError("need at least one feature column besides the label")
            elif len(record) != width:
                raise ValueError(
                    f"row {row_number}: expected {width} columns, found {len(record)}"
                )
            features = []
            for col, token in enumerate(record):
                if col == label_idx:
                    labels.append(_parse_label(token.strip(), row_number))
                else:
                    features.append(_parse_float(token.strip(), row_number, col))
            rows.append(features)
    if not rows:
        raise ValueError(f"{path}: no data rows")
    matrix = np.array(rows, dtype=np.float64)
    dataset_name = name if name is not None else _stem(path)
    return DataSet(
        matrix=matrix,
        true_labels=np.array(labels, dtype=np.int64) if label_column is not None else None,
        name=dataset_name,
    )


def _stem(path) -> str:
    import os

    return os.path.splitext(os.path.basename(str(path)))[0]
