"""Tests for losses and the Adam optimizer."""
import numpy as np
from django.test import SimpleTestCase

from lvx.exceptions import DimensionError, InvalidInputError
from ..losses import loss_bce, loss_mse
from ..matrix import log_sigmoid, sigmoid
from ..optim import AdamState, adam_step
from ..rng import Rng


class MseTestCase(SimpleTestCase):

    def test_equal_inputs(self):
        x = np.array([[1.0, 2.0], [3.0, 4.0]])
        loss, grad = loss_mse(x, x.copy())
        self.assertEqual(loss, 0.0)
        np.testing.assert_array_equal(grad, np.zeros_like(x))

    def test_hand_value(self):
        loss, grad = loss_mse(np.array([[1.0, 2.0]]), np.zeros((1, 2)))
        self.assertEqual(loss, 2.5)
        np.testing.assert_array_equal(grad, [[1.0, 2.0]])

    def test_shape_mismatch(self):
        with self.assertRaises(DimensionError):
            loss_mse(np.zeros((1, 2)), np.zeros((2, 1)))


class BceTestCase(SimpleTestCase):

    def _bce(self, logits, labels):
        logits = np.asarray(logits, dtype=np.float64)
        return loss_bce(log_sigmoid(logits), labels, logits)

    def test_certain_positive(self):
        loss, _ = self._bce([800.0], [1])
        self.assertEqual(loss, 0.0)

    def test_half_probability(self):
        loss, grad = self._bce([0.0], [1])
        self.assertAlmostEqual(loss, 0.693147, places=6)
        self.assertAlmostEqual(grad[0], -0.5)

    def test_saturated_wrong_prediction_is_finite(self):
        loss, grad = self._bce([-800.0], [1])
        self.assertAlmostEqual(loss, 800.0)
        self.assertTrue(np.all(np.isfinite(grad)))

    def test_gradient_matches_finite_difference(self):
        rng = Rng(5)
        logits = rng.normal(6)
        labels = np.array([0, 1, 1, 0, 0, 1])
        _, grad = self._bce(logits, labels)
        h = 1e-6
        for i in range(logits.shape[0]):
            plus, minus = logits.copy(), logits.copy()
            plus[i] += h
            minus[i] -= h
            numeric = (self._bce(plus, labels)[0] - self._bce(minus, labels)[0]) / (2 * h)
            self.assertAlmostEqual(grad[i], numeric, places=7)

    def test_label_domain(self):
        with self.assertRaises(InvalidInputError):
            self._bce([0.0, 0.0], [0, 2])

    def test_positive_log_prob_rejected(self):
        with self.assertRaises(InvalidInputError):
            loss_bce(np.array([0.1]), np.array([1]), np.array([0.0]))


class SigmoidTestCase(SimpleTestCase):

    def test_extremes(self):
        values = sigmoid(np.array([-1000.0, 0.0, 1000.0]))
        np.testing.assert_array_equal(values, [0.0, 0.5, 1.0])
        self.assertTrue(np.all(np.isfinite(log_sigmoid(np.array([-1000.0, 1000.0])))))


class AdamTestCase(SimpleTestCase):

    def test_zero_gradient_leaves_params(self):
        params = [np.array([1.0, -2.0]), np.array([[0.5]])]
        state = AdamState.for_params(params)
        before = [p.copy() for p in params]
        adam_step(params, [np.zeros(2), np.zeros((1, 1))], state)
        for param, original in zip(params, before):
            np.testing.assert_array_equal(param, original)
        for m, v in zip(state.m, state.v):
            self.assertFalse(m.any())
            self.assertFalse(v.any())
        self.assertEqual(state.t, 1)

    def test_single_step(self):
        params = [np.array([1.0])]
        state = AdamState.for_params(params, lr=0.001)
        adam_step(params, [np.array([1.0])], state)
        self.assertAlmostEqual(params[0][0], 1.0 - 0.001 / (1.0 + 1e-8), places=12)
        self.assertAlmostEqual(params[0][0], 0.999, places=6)

    def test_constant_gradient_descends_monotonically(self):
        params = [np.array([1.0])]
        state = AdamState.for_params(params, lr=0.001)
        trajectory = [params[0][0]]
        for _ in range(1000):
            adam_step(params, [np.array([1.0])], state)
            trajectory.append(params[0][0])
        self.assertTrue(np.all(np.diff(trajectory) < 0))
        self.assertEqual(state.t, 1000)
        self.assertAlmostEqual(trajectory[-1], 0.0, delta=1e-6)

    def test_shape_mismatch(self):
        params = [np.zeros(3)]
        state = AdamState.for_params(params)
        with self.assertRaises(DimensionError):
            adam_step(params, [np.zeros(2)], state)

    def test_invalid_hyperparameters(self):
        with self.assertRaises(InvalidInputError):
            AdamState(lr=0.0)
