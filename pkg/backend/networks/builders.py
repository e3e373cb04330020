import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from lvx.exceptions import DimensionError, InvalidInputError, ModelKindError
from lvx.utils import arrays_checksum
from nn.layers import DenseLayer, Mode, dense_backward, dense_forward, init_params
from nn.matrix import check_matrix
from .specs import ModelKind, ModelSpec

logger = logging.getLogger(__name__)


@dataclass
class Model:
    spec: ModelSpec
    encoder: List[DenseLayer] = field(default_factory=list)
    decoder: List[DenseLayer] = field(default_factory=list)
    head: List[DenseLayer] = field(default_factory=list)

    def __post_init__(self):
        layers = self.layers()
        if not layers:
            raise InvalidInputError("model has no layers")
        expected = self.spec.input_dim
        for index, layer in enumerate(layers):
            if layer.fan_in != expected:
                raise DimensionError(f"layer {index} fan_in {layer.fan_in} != previous fan_out {expected}")
            expected = layer.fan_out

    @property
    def is_autoencoder(self):
        return self.spec.is_autoencoder

    @property
    def latent_width(self):
        if self.is_autoencoder:
            return self.encoder[-1].fan_out
        return self.spec.input_dim

    def layers(self):
        return list(self.encoder) + list(self.decoder) + list(self.head)

    def parameters(self):
        params = []
        for layer in self.layers():
            params.extend(layer.parameters())
        return params

    def checksum(self):
        return arrays_checksum(self.parameters())

    def copy(self):
        def clone(layers):
            return [
                DenseLayer(
                    weights=layer.weights.copy(),
                    bias=layer.bias.copy(),
                    activation=layer.activation,
                    dropout_rate=layer.dropout_rate,
                )
                for layer in layers
            ]

        return Model(spec=self.spec, encoder=clone(self.encoder), decoder=clone(self.decoder), head=clone(self.head))


def build_model(spec, rng):
    """
    Instantiate the layer stacks described by `spec`.

    Args:
        spec: ModelSpec (validated on construction)
        rng: Rng used for weight initialisation

    Returns:
        Model with freshly initialised parameters
    """
    spec.validate()

    def instantiate(layer_specs):
        return [
            init_params(s.fan_in, s.fan_out, rng, activation=s.activation, dropout_rate=s.dropout_rate)
            for s in layer_specs
        ]

    model = Model(
        spec=spec,
        encoder=instantiate(spec.encoder_layers()),
        decoder=instantiate(spec.decoder_layers()),
        head=instantiate(spec.head_layers()),
    )
    logger.debug(f"Built {spec.kind.value}: {' | '.join(str(layer) for layer in model.layers())}")
    return model


def forward_stack(layers, x, mode=Mode.EVAL, rng=None):
    caches = []
    out = x
    for layer in layers:
        out, cache = dense_forward(layer, out, mode=mode, rng=rng)
        caches.append(cache)
    return out, caches


def backward_stack(caches, grad_output):
    """
    Backpropagate through a stack.

    Returns:
        Gradients in the same order as the stack's parameters
        ([dW0, db0, dW1, db1, ...]).
    """
    grads = []
    grad = grad_output
    for cache in reversed(caches):
        grad, grad_weights, grad_bias = dense_backward(cache, grad)
        grads.append(grad_bias)
        grads.append(grad_weights)
    grads.reverse()
    return grads


def _require_autoencoder(model):
    if not model.is_autoencoder:
        raise ModelKindError(f"{model.spec.kind.value} is not an autoencoder")


def encode(model, x):
    """Encoder-only forward in Eval mode."""
    _require_autoencoder(model)
    x = check_matrix(x, "encoder input", cols=model.spec.input_dim)
    latent, _ = forward_stack(model.encoder, x)
    return latent


def reconstruct(model, x):
    """Full encoder + decoder forward in Eval mode; outputs lie in (0, 1)."""
    _require_autoencoder(model)
    x = check_matrix(x, "autoencoder input", cols=model.spec.input_dim)
    x_hat, _ = forward_stack(model.encoder + model.decoder, x)
    return x_hat


def reconstruction_error(model, x):
    """Per-row mean squared reconstruction error."""
    x = check_matrix(x, "autoencoder input", cols=model.spec.input_dim)
    x_hat = reconstruct(model, x)
    return np.mean((x_hat - x) ** 2, axis=1)


def classifier_forward(model, latent, mode=Mode.EVAL, rng=None):
    """
    Run the expansion head.

    Returns:
        (log_prob, logit, caches); log_prob and logit are 1-D.
    """
    if model.spec.kind is not ModelKind.EXPANSION_CLASSIFIER:
        raise ModelKindError(f"{model.spec.kind.value} is not a classifier")
    latent = check_matrix(latent, "classifier input", cols=model.spec.input_dim)
    log_prob, caches = forward_stack(model.head, latent, mode=mode, rng=rng)
    logit = caches[-1].pre_activation[:, 0]
    return log_prob[:, 0], logit, caches


def classify(model, latent):
    """
    Score rows with a trained classifier in Eval mode.

    Returns:
        (log_prob, logit); ranking by logit equals ranking by probability.
    """
    log_prob, logit, _ = classifier_forward(model, latent)
    return log_prob, logit
