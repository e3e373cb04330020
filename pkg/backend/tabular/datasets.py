import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

import numpy as np
import pandas as pd

from lvx.exceptions import CSVParseError, DimensionError, InvalidInputError, SchemaError
from nn.matrix import check_binary_labels
from .constants import CREDITCARD_COLUMNS, CREDITCARD_FEATURES, LABEL_COLUMN, Schema

logger = logging.getLogger(__name__)


@dataclass
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    column_names: List[str] = field(default_factory=list)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        if self.features.ndim != 2:
            raise DimensionError(f"features must be 2-D, got shape {self.features.shape}")
        self.labels = check_binary_labels(self.labels).astype(np.int64)
        if self.labels.shape[0] != self.features.shape[0]:
            raise DimensionError(f"{self.labels.shape[0]} labels for {self.features.shape[0]} rows")
        if not self.column_names:
            self.column_names = [f"x{i}" for i in range(self.features.shape[1])]
        if len(self.column_names) != self.features.shape[1]:
            raise DimensionError(f"{len(self.column_names)} column names for {self.features.shape[1]} features")

    @property
    def n_rows(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]

    @property
    def anomaly_count(self):
        return int(self.labels.sum())

    def subset(self, indices):
        indices = np.asarray(indices, dtype=np.int64)
        return Dataset(self.features[indices], self.labels[indices], list(self.column_names))

    def with_features(self, features):
        return Dataset(features, self.labels, list(self.column_names))

    def summary(self):
        rate = self.anomaly_count / self.n_rows if self.n_rows else 0.0
        return {
            "rows": self.n_rows,
            "features": self.n_features,
            "anomalies": self.anomaly_count,
            "anomaly_rate": rate,
        }


def _read_frame(path):
    path = Path(path)
    if not path.exists():
        raise InvalidInputError(f"Dataset file not found: {path}")
    try:
        # round_trip parsing makes export_csv -> load_csv bit-exact
        frame = pd.read_csv(path, keep_default_na=False, float_precision="round_trip", encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise InvalidInputError(f"Dataset file is empty: {path}")
    except UnicodeDecodeError as e:
        raise CSVParseError(f"{path} is not valid UTF-8 (byte offset {e.start}): {e.reason}")
    except pd.errors.ParserError as e:
        raise CSVParseError(f"{path} is not a well-formed CSV file: {e}")
    if frame.shape[0] == 0:
        raise InvalidInputError(f"Dataset file has a header but no rows: {path}")
    return frame


def _parse_numeric(frame, columns):
    """Collect numeric columns as float64, reporting the first bad cell."""
    values = np.empty((frame.shape[0], len(columns)), dtype=np.float64)
    for col_index, column in enumerate(columns):
        series = frame[column]
        if pd.api.types.is_numeric_dtype(series) and not pd.api.types.is_bool_dtype(series):
            column_values = series.to_numpy(dtype=np.float64)
            bad = ~np.isfinite(column_values)
        else:
            column_values = None
            bad = pd.to_numeric(series.astype(str).str.strip(), errors="coerce").isna().to_numpy()
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            # +2: header row and 1-based numbering
            raise CSVParseError(
                f"Cannot parse {str(series.iloc[row])!r} as a number at row {row + 2}, column '{column}'",
                row=row + 2,
                column=column,
            )
        if column_values is None:
            # Every cell parsed; only whitespace kept pandas from inferring a float column.
            column_values = pd.to_numeric(series.astype(str).str.strip()).to_numpy(dtype=np.float64)
        values[:, col_index] = column_values
    return values


def _resolve_columns(frame, schema, require_labels):
    columns = [c.strip() for c in frame.columns]
    frame.columns = columns
    if schema is Schema.CREDITCARD:
        expected = CREDITCARD_COLUMNS if require_labels or LABEL_COLUMN in columns else CREDITCARD_FEATURES
        missing = [c for c in expected if c not in columns]
        if missing:
            raise SchemaError(f"Missing column '{missing[0]}'; expected {schema.describe()}", column=missing[0])
        extra = [c for c in columns if c not in expected]
        if extra:
            raise SchemaError(f"Unexpected column '{extra[0]}'; expected {schema.describe()}", column=extra[0])
        return CREDITCARD_FEATURES, (LABEL_COLUMN if LABEL_COLUMN in columns else None)

    if len(set(columns)) != len(columns):
        duplicate = next(c for c in columns if columns.count(c) > 1)
        raise SchemaError(f"Duplicate column '{duplicate}'", column=duplicate)
    if LABEL_COLUMN in columns:
        label = LABEL_COLUMN
    elif require_labels:
        label = columns[-1]
    else:
        label = None
    features = [c for c in columns if c != label]
    if not features:
        raise SchemaError("No feature columns found", column=label)
    return features, label


def load_csv(path, schema=Schema.GENERIC, require_labels=True):
    """
    Load a labelled tabular dataset.

    Args:
        path: CSV path (UTF-8, header row, comma separated)
        schema: Schema.CREDITCARD or Schema.GENERIC
        require_labels: When False, a missing label column yields all-zero labels

    Returns:
        Dataset with rows in file order
    """
    schema = Schema(schema)
    frame = _read_frame(path)
    feature_columns, label_column = _resolve_columns(frame, schema, require_labels)

    features = _parse_numeric(frame, feature_columns)
    if label_column is not None:
        label_values = _parse_numeric(frame, [label_column])[:, 0]
        bad = (label_values != 0) & (label_values != 1)
        if bad.any():
            row = int(np.flatnonzero(bad)[0])
            raise InvalidInputError(
                f"Label '{label_column}' must be 0 or 1, found {frame[label_column].iloc[row]!r} at row {row + 2}"
            )
        labels = label_values.astype(np.int64)
    else:
        labels = np.zeros(frame.shape[0], dtype=np.int64)

    dataset = Dataset(features, labels, feature_columns)
    summary = dataset.summary()
    logger.info(
        f"Loaded {path}: N={summary['rows']}, D={summary['features']}, "
        f"anomalies={summary['anomalies']} ({summary['anomaly_rate']:.4%})"
    )
    return dataset


def export_csv(dataset, path):
    """Write a dataset in the Generic schema with round-trip float precision."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame(dataset.features, columns=dataset.column_names)
    frame[LABEL_COLUMN] = dataset.labels
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Wrote {dataset.n_rows} rows to {path}")
    return path
