"""
Validation and elementwise helpers for the numeric carrier.

A Matrix is a 2-D numpy array of float64. Vectors are 1-D float64 arrays.
"""
import numpy as np

from lvx.exceptions import DimensionError, NumericError, InvalidInputError


def check_matrix(value, name="input", cols=None):
    """
    Coerce to a 2-D float64 array and validate it.

    Args:
        value: Array-like input
        name: Name used in error messages
        cols: Expected column count, or None to skip the check

    Returns:
        np.ndarray of shape (rows, cols), dtype float64

    Raises:
        DimensionError: not 2-D, or wrong column count
        NumericError: any NaN/Inf entry
    """
    array = np.asarray(value, dtype=np.float64)
    if array.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {array.shape}")
    if cols is not None and array.shape[1] != cols:
        raise DimensionError(f"{name} has {array.shape[1]} columns, expected {cols}")
    check_finite(array, name)
    return array


def check_vector(value, name="input", length=None):
    array = np.asarray(value, dtype=np.float64)
    if array.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {array.shape}")
    if length is not None and array.shape[0] != length:
        raise DimensionError(f"{name} has length {array.shape[0]}, expected {length}")
    check_finite(array, name)
    return array


def check_finite(array, name="input"):
    if not np.all(np.isfinite(array)):
        raise NumericError(f"{name} contains NaN or Inf")
    return array


def check_binary_labels(labels, name="labels"):
    array = np.asarray(labels)
    if array.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {array.shape}")
    if array.size and not np.all((array == 0) | (array == 1)):
        bad = array[(array != 0) & (array != 1)][0]
        raise InvalidInputError(f"{name} must be 0 or 1, found {bad!r}")
    return array.astype(np.float64)


def sigmoid(x):
    """Numerically stable logistic function."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    positive = x >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-x[positive]))
    exp_x = np.exp(x[~positive])
    out[~positive] = exp_x / (1.0 + exp_x)
    return out


def log_sigmoid(x):
    """log(sigmoid(x)) without overflow: -log(1 + exp(-x))."""
    return -np.logaddexp(0.0, -np.asarray(x, dtype=np.float64))
