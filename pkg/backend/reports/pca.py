import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from lvx.exceptions import DimensionError, InvalidInputError
from nn.matrix import check_matrix

logger = logging.getLogger(__name__)

N_COMPONENTS = 2


@dataclass
class PcaModel:
    mean: np.ndarray  # D
    axes: np.ndarray  # D x 2, orthonormal columns
    explained_variance: np.ndarray  # 2, descending


def jacobi_eigh(symmetric, tol=1e-14, max_sweeps=100):
    """
    Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns:
        (eigenvalues descending, eigenvectors as columns)
    """
    a = check_matrix(symmetric, "symmetric matrix").copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError(f"expected a square matrix, got {a.shape}")
    vectors = np.eye(n)
    scale = np.linalg.norm(a)
    if n > 1 and scale > 0:
        for sweep in range(max_sweeps):
            off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
            if off <= tol * scale:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if abs(theta) > 1e150:
                        t = 1.0 / (2.0 * theta)
                    else:
                        t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                        if theta == 0.0:
                            t = 1.0
                    c = 1.0 / np.sqrt(t * t + 1.0)
                    s = t * c

                    col_p = a[:, p].copy()
                    col_q = a[:, q].copy()
                    a[:, p] = c * col_p - s * col_q
                    a[:, q] = s * col_p + c * col_q
                    row_p = a[p, :].copy()
                    row_q = a[q, :].copy()
                    a[p, :] = c * row_p - s * row_q
                    a[q, :] = s * row_p + c * row_q
                    a[p, q] = a[q, p] = 0.0

                    vec_p = vectors[:, p].copy()
                    vec_q = vectors[:, q].copy()
                    vectors[:, p] = c * vec_p - s * vec_q
                    vectors[:, q] = s * vec_p + c * vec_q
        else:
            logger.warning(f"Jacobi did not converge in {max_sweeps} sweeps")

    values = np.diag(a).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], vectors[:, order]


def pca_fit(x):
    """
    Fit a 2-component PCA.

    Covariance uses the unbiased (N - 1) estimator. Each axis is signed so that
    its largest-magnitude component is positive.
    """
    x = check_matrix(x, "PCA input")
    n_rows, n_cols = x.shape
    if n_rows < 2:
        raise InvalidInputError(f"PCA needs at least 2 rows, got {n_rows}")
    if n_cols < N_COMPONENTS:
        raise InvalidInputError(f"PCA needs at least {N_COMPONENTS} columns, got {n_cols}")

    mean = x.mean(axis=0)
    centered = x - mean
    covariance = centered.T @ centered / (n_rows - 1)
    covariance = (covariance + covariance.T) / 2.0
    values, vectors = jacobi_eigh(covariance)

    axes = vectors[:, :N_COMPONENTS].copy()
    for index in range(N_COMPONENTS):
        pivot = np.argmax(np.abs(axes[:, index]))
        if axes[pivot, index] < 0:
            axes[:, index] = -axes[:, index]
    explained = np.maximum(values[:N_COMPONENTS], 0.0)
    return PcaModel(mean=mean, axes=axes, explained_variance=explained)


def pca_project(model, x):
    x = check_matrix(x, "PCA input", cols=model.mean.shape[0])
    return (x - model.mean) @ model.axes


def export_projection_csv(projection, labels, path):
    """Write (pc1, pc2, label) rows for external plotting."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({
        "pc1": projection[:, 0],
        "pc2": projection[:, 1],
        "label": np.asarray(labels, dtype=np.int64),
    })
    frame.to_csv(path, index=False, float_format="%.17g")
    logger.info(f"Wrote {len(frame)} projected rows to {path}")
    return path
