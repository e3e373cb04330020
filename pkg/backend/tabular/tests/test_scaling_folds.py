"""Tests for Min-Max scaling and K-fold partitioning."""
import numpy as np
import pytest
from django.test import SimpleTestCase

from lvx.exceptions import DimensionError, InvalidInputError
from nn.rng import Rng, STREAM_INIT
from ..datasets import Dataset
from ..folds import kfold_split
from ..scaling import Scaler, apply_scaler, fit_latent_scaler, fit_scaler


def _dataset(columns):
    features = np.column_stack(columns).astype(np.float64)
    return Dataset(features, np.zeros(features.shape[0], dtype=np.int64))


class ScalerTestCase(SimpleTestCase):

    def test_endpoints(self):
        data = _dataset([[2.0, 4.0, 6.0]])
        scaled = apply_scaler(fit_scaler(data), data)
        np.testing.assert_array_equal(scaled.features[:, 0], [0.0, 0.5, 1.0])

    def test_constant_column(self):
        data = _dataset([[5.0, 5.0, 5.0], [1.0, 2.0, 3.0]])
        scaled = apply_scaler(fit_scaler(data), data)
        np.testing.assert_array_equal(scaled.features[:, 0], [0.0, 0.0, 0.0])

    def test_clamps_unseen_values(self):
        scaler = fit_scaler(_dataset([[0.0, 10.0]]))
        scaled = apply_scaler(scaler, _dataset([[12.0, -3.0, 5.0]]))
        np.testing.assert_array_equal(scaled.features[:, 0], [1.0, 0.0, 0.5])

    def test_column_mismatch(self):
        scaler = fit_scaler(_dataset([[0.0, 1.0], [0.0, 1.0]]))
        with self.assertRaises(DimensionError):
            apply_scaler(scaler, _dataset([[0.0, 1.0]]))

    def test_dict_round_trip(self):
        scaler = fit_scaler(_dataset([[0.1, 0.7], [1 / 3, 2 / 3]]))
        restored = Scaler.from_dict(scaler.to_dict())
        self.assertEqual(restored.minimum.tobytes(), scaler.minimum.tobytes())
        self.assertEqual(restored.maximum.tobytes(), scaler.maximum.tobytes())

    def test_inverse(self):
        data = _dataset([[2.0, 4.0, 6.0]])
        scaler = fit_scaler(data)
        np.testing.assert_allclose(scaler.inverse_transform(scaler.transform(data.features)), data.features)

    def test_latent_scaler_does_not_clip(self):
        scaler = fit_latent_scaler(np.array([[0.0, 3.0], [10.0, 3.0]]))
        scaled = scaler.transform(np.array([[12.0, 3.0], [-3.0, 7.0], [5.0, 3.0]]))
        np.testing.assert_allclose(scaled[:, 0], [1.2, -0.3, 0.5])
        np.testing.assert_array_equal(scaled[:, 1], [0.0, 0.0, 0.0])
        self.assertFalse(Scaler.from_dict(scaler.to_dict()).clip)

    def test_latent_scaler_needs_rows(self):
        with self.assertRaises(InvalidInputError):
            fit_latent_scaler(np.empty((0, 3)))


class KFoldTestCase(SimpleTestCase):

    def test_one_row_per_fold(self):
        plan = kfold_split(10, 10, seed=0)
        np.testing.assert_array_equal(plan.fold_sizes(), np.ones(10))

    def test_creditcard_fold_sizes(self):
        sizes = kfold_split(284807, 10, seed=0).fold_sizes()
        self.assertEqual(sorted(set(sizes.tolist())), [28480, 28481])
        self.assertEqual(int(np.sum(sizes == 28481)), 7)
        self.assertEqual(int(np.sum(sizes == 28480)), 3)

    def test_partition(self):
        plan = kfold_split(53, 5, seed=1)
        seen = np.concatenate([plan.test_indices(f) for f in range(5)])
        np.testing.assert_array_equal(np.sort(seen), np.arange(53))
        for fold in range(5):
            self.assertEqual(
                set(plan.test_indices(fold)) & set(plan.train_indices(fold)),
                set(),
            )

    def test_deterministic(self):
        first = kfold_split(100, 7, seed=42).assignments
        second = kfold_split(100, 7, seed=42).assignments
        self.assertEqual(first.tobytes(), second.tobytes())
        self.assertNotEqual(first.tobytes(), kfold_split(100, 7, seed=43).assignments.tobytes())

    def test_k_greater_than_n(self):
        with self.assertRaises(InvalidInputError):
            kfold_split(5, 10, seed=0)

    def test_stratified_spreads_anomalies(self):
        labels = np.zeros(1000, dtype=np.int64)
        labels[:20] = 1
        plan = kfold_split(1000, 10, seed=0, labels=labels, stratified=True)
        for fold in range(10):
            self.assertEqual(int(labels[plan.test_indices(fold)].sum()), 2)

    def test_unknown_fold(self):
        plan = kfold_split(10, 2, seed=0)
        with self.assertRaises(InvalidInputError):
            plan.test_indices(2)

    def test_permutation_has_its_own_stream(self):
        plan = kfold_split(200, 4, seed=0)
        init_order = Rng(0, STREAM_INIT).permutation(200)
        init_assignments = np.empty(200, dtype=np.int64)
        for fold, block in enumerate(np.array_split(init_order, 4)):
            init_assignments[block] = fold
        self.assertFalse(np.array_equal(plan.assignments, init_assignments))


def _random_fold_cases(count=30):
    draw = np.random.default_rng(20240601)
    cases = []
    for _ in range(count):
        n_rows = int(draw.integers(2, 400))
        k = int(draw.integers(2, min(n_rows, 25) + 1))
        cases.append((n_rows, k, int(draw.integers(0, 2**31))))
    return cases


@pytest.mark.parametrize("n_rows,k,seed", _random_fold_cases())
def test_plain_folds_partition_rows(n_rows, k, seed):
    plan = kfold_split(n_rows, k, seed=seed)
    tests = [plan.test_indices(fold) for fold in range(k)]
    np.testing.assert_array_equal(np.sort(np.concatenate(tests)), np.arange(n_rows))
    for fold, test_rows in enumerate(tests):
        assert not set(test_rows) & set(plan.train_indices(fold))
        assert len(test_rows) + len(plan.train_indices(fold)) == n_rows
    sizes = plan.fold_sizes()
    assert sizes.max() - sizes.min() <= 1
    assert int(np.sum(sizes == n_rows // k + 1)) == n_rows % k


@pytest.mark.parametrize("n_rows,k,seed", _random_fold_cases(15))
def test_stratified_folds_partition_rows(n_rows, k, seed):
    labels = (np.arange(n_rows) % 7 == 0).astype(np.int64)
    plan = kfold_split(n_rows, k, seed=seed, labels=labels, stratified=True)
    seen = np.concatenate([plan.test_indices(fold) for fold in range(k)])
    np.testing.assert_array_equal(np.sort(seen), np.arange(n_rows))
    positives = [int(labels[plan.test_indices(fold)].sum()) for fold in range(k)]
    assert max(positives) - min(positives) <= 1
