import logging
from dataclasses import dataclass

import numpy as np

from lvx.exceptions import InvalidInputError
from nn.rng import Rng, STREAM_FOLDS

logger = logging.getLogger(__name__)


@dataclass
class FoldPlan:
    k: int
    assignments: np.ndarray  # fold id per row

    @property
    def n_rows(self):
        return self.assignments.shape[0]

    def _check_fold(self, fold):
        if not 0 <= fold < self.k:
            raise InvalidInputError(f"fold must be in [0, {self.k}), got {fold}")

    def test_indices(self, fold):
        self._check_fold(fold)
        return np.flatnonzero(self.assignments == fold)

    def train_indices(self, fold):
        self._check_fold(fold)
        return np.flatnonzero(self.assignments != fold)

    def fold_sizes(self):
        return np.bincount(self.assignments, minlength=self.k)


def kfold_split(n_rows, k, seed, labels=None, stratified=False):
    """
    Deterministic K-way partition of `n_rows` rows.

    Plain mode shuffles rows with a seeded permutation and deals them into K
    contiguous blocks (the first N mod K blocks get one extra row). Stratified
    mode orders the shuffled rows class by class and deals them round-robin.

    Args:
        n_rows: Number of rows N
        k: Number of folds K
        seed: Permutation seed
        labels: Row labels, required when stratified
        stratified: Balance classes across folds

    Returns:
        FoldPlan
    """
    if k < 2:
        raise InvalidInputError(f"K must be >= 2, got {k}")
    if k > n_rows:
        raise InvalidInputError(f"K={k} exceeds the number of rows N={n_rows}")

    permutation = Rng(seed, STREAM_FOLDS).permutation(n_rows)
    assignments = np.empty(n_rows, dtype=np.int64)
    if stratified:
        if labels is None:
            raise InvalidInputError("stratified K-fold needs labels")
        labels = np.asarray(labels)
        ordered = np.concatenate([permutation[labels[permutation] == value] for value in np.unique(labels)])
        assignments[ordered] = np.arange(n_rows) % k
    else:
        for fold, block in enumerate(np.array_split(permutation, k)):
            assignments[block] = fold

    plan = FoldPlan(k=k, assignments=assignments)
    logger.debug(f"K-fold split N={n_rows} K={k} seed={seed} stratified={stratified}: sizes {plan.fold_sizes().tolist()}")
    return plan
