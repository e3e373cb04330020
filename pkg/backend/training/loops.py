import logging
import time
from dataclasses import dataclass, field
from typing import List

import numpy as np

from lvx.exceptions import InvalidInputError, NumericError
from networks.builders import backward_stack, build_model, classifier_forward, forward_stack
from networks.specs import ModelKind
from nn.layers import Mode
from nn.losses import loss_bce, loss_mse
from nn.matrix import check_binary_labels, check_matrix
from nn.optim import AdamState, adam_step
from nn.rng import Rng, STREAM_CLASSIFIER_INIT, STREAM_DROPOUT, STREAM_INIT, STREAM_SHUFFLE

logger = logging.getLogger(__name__)


@dataclass
class TrainTrace:
    losses: List[float] = field(default_factory=list)
    epoch_seconds: List[float] = field(default_factory=list)
    checksum: str = ""

    @property
    def epochs(self):
        return len(self.losses)

    def to_dict(self):
        return {"losses": list(self.losses), "epoch_seconds": list(self.epoch_seconds), "checksum": self.checksum}

    @classmethod
    def from_dict(cls, payload):
        return cls(**payload)


def iter_batches(n_rows, batch_size, order):
    """Yield index batches; the last partial batch is kept."""
    for start in range(0, n_rows, batch_size):
        yield order[start:start + batch_size]


def _fit(model, layers, n_rows, epochs, cfg, step, label):
    """
    Shared mini-batch Adam loop.

    `step(batch_indices, dropout_rng)` runs forward + backward for one batch
    and returns (loss, grads) aligned with the parameters of `layers`.
    """
    params = []
    for layer in layers:
        params.extend(layer.parameters())
    state = AdamState.for_params(params, lr=cfg.lr)
    shuffle_rng = Rng(cfg.seed, STREAM_SHUFFLE)
    dropout_rng = Rng(cfg.seed, STREAM_DROPOUT)
    trace = TrainTrace()

    order = np.arange(n_rows)
    for epoch in range(epochs):
        started = time.perf_counter()
        if cfg.shuffle_each_epoch:
            order = shuffle_rng.permutation(n_rows)
        total = 0.0
        for batch in iter_batches(n_rows, cfg.batch_size, order):
            loss, grads = step(batch, dropout_rng)
            adam_step(params, grads, state)
            total += loss * len(batch)
        epoch_loss = total / n_rows
        if not np.isfinite(epoch_loss):
            raise NumericError(f"{label} loss became non-finite at epoch {epoch + 1}")
        trace.losses.append(epoch_loss)
        trace.epoch_seconds.append(time.perf_counter() - started)
        logger.debug(f"{label} epoch {epoch + 1}/{epochs}: loss={epoch_loss:.6f}")

    trace.checksum = model.checksum()
    if trace.losses:
        logger.info(
            f"Trained {label} for {epochs} epochs: loss {trace.losses[0]:.6f} -> {trace.losses[-1]:.6f} "
            f"(checksum {trace.checksum[:12]})"
        )
    return model, trace


def train_autoencoder(spec, train, cfg):
    """
    Fit an autoencoder by minimising reconstruction MSE.

    Args:
        spec: Autoencoder ModelSpec
        train: Dataset with Min-Max scaled features
        cfg: TrainConfig (ae_epochs, lr, batch_size, seed)

    Returns:
        (Model, TrainTrace)
    """
    if not spec.is_autoencoder:
        raise InvalidInputError(f"{spec.kind.value} is not an autoencoder spec")
    if train.n_rows == 0:
        raise InvalidInputError("cannot train an autoencoder on an empty dataset")
    x = check_matrix(train.features, "training features", cols=spec.input_dim)
    if x.min() < 0.0 or x.max() > 1.0:
        raise InvalidInputError("autoencoder inputs must be Min-Max scaled into [0, 1]")

    model = build_model(spec, Rng(cfg.seed, STREAM_INIT))
    layers = model.encoder + model.decoder

    def step(batch, dropout_rng):
        inputs = x[batch]
        x_hat, caches = forward_stack(layers, inputs, mode=Mode.TRAIN, rng=dropout_rng)
        loss, grad = loss_mse(x_hat, inputs)
        return loss, backward_stack(caches, grad)

    return _fit(model, layers, x.shape[0], cfg.ae_epochs, cfg, step, spec.kind.value)


def train_classifier(spec, inputs, labels, cfg):
    """
    Fit the expansion classifier with binary cross entropy.

    Dropout is active during training only; no class re-weighting.

    Returns:
        (Model, TrainTrace)
    """
    if spec.kind is not ModelKind.EXPANSION_CLASSIFIER:
        raise InvalidInputError(f"{spec.kind.value} is not a classifier spec")
    x = check_matrix(inputs, "classifier inputs", cols=spec.input_dim)
    y = check_binary_labels(labels)
    if y.shape[0] != x.shape[0]:
        raise InvalidInputError(f"{y.shape[0]} labels for {x.shape[0]} rows")
    if x.shape[0] == 0:
        raise InvalidInputError("cannot train a classifier on zero rows")

    model = build_model(spec, Rng(cfg.seed, STREAM_CLASSIFIER_INIT))

    def step(batch, dropout_rng):
        log_prob, logit, caches = classifier_forward(model, x[batch], mode=Mode.TRAIN, rng=dropout_rng)
        loss, grad_logit = loss_bce(log_prob, y[batch], logit)
        # The head ends in log-sigmoid; the loss gradient is already w.r.t. its
        # pre-activation, so the last layer's activation derivative is bypassed.
        grads = _head_backward(caches, grad_logit[:, None])
        return loss, grads

    return _fit(model, model.head, x.shape[0], cfg.clf_epochs, cfg, step, spec.kind.value)


def _head_backward(caches, grad_logit):
    last = caches[-1]
    grad_weights = last.inputs.T @ grad_logit
    grad_bias = grad_logit.sum(axis=0)
    grad_hidden = grad_logit @ last.weights.T
    grads = backward_stack(caches[:-1], grad_hidden) if len(caches) > 1 else []
    return grads + [grad_weights, grad_bias]
