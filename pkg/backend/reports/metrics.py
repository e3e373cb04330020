from dataclasses import dataclass

import numpy as np

from lvx.exceptions import DimensionError, UndefinedMetricError
from nn.matrix import check_binary_labels, check_vector


@dataclass
class RocInput:
    scores: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        self.scores = check_vector(self.scores, "scores")
        self.labels = check_binary_labels(self.labels)
        if self.scores.shape != self.labels.shape:
            raise DimensionError(f"{self.scores.shape[0]} scores for {self.labels.shape[0]} labels")

    @property
    def n_positive(self):
        return int(self.labels.sum())

    @property
    def n_negative(self):
        return int(self.labels.shape[0] - self.labels.sum())


def auroc(roc):
    """
    Area under the ROC curve as the Mann-Whitney statistic.

    Pairs where the positive outscores the negative count 1, ties count 0.5.
    Computed from mid-ranks of the sorted scores in O(n log n).

    Raises:
        UndefinedMetricError: only one class present
    """
    n_pos, n_neg = roc.n_positive, roc.n_negative
    if n_pos == 0 or n_neg == 0:
        raise UndefinedMetricError(f"AUROC needs both classes, got {n_pos} positive / {n_neg} negative")

    _, inverse, counts = np.unique(roc.scores, return_inverse=True, return_counts=True)
    # Mid-rank (1-based) of each distinct score value.
    upper = np.cumsum(counts).astype(np.float64)
    mid_ranks = upper - (counts - 1) / 2.0
    rank_sum = mid_ranks[inverse][roc.labels == 1].sum()
    u_statistic = rank_sum - n_pos * (n_pos + 1) / 2.0
    return float(u_statistic / (n_pos * n_neg))


def auroc_score(scores, labels):
    return auroc(RocInput(scores=np.asarray(scores, dtype=np.float64), labels=np.asarray(labels)))
