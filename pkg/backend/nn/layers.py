import enum
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from lvx.exceptions import DimensionError, InvalidInputError
from .matrix import check_matrix, sigmoid, log_sigmoid

logger = logging.getLogger(__name__)


class Activation(str, enum.Enum):
    NONE = "none"
    RELU = "relu"
    SIGMOID = "sigmoid"
    LOG_SIGMOID = "log_sigmoid"

    @property
    def code(self):
        """Stable one-byte code used by the checkpoint format."""
        return _ACTIVATION_CODES[self]

    @classmethod
    def from_code(cls, code):
        for activation, value in _ACTIVATION_CODES.items():
            if value == code:
                return activation
        raise InvalidInputError(f"Unknown activation code {code}")


_ACTIVATION_CODES = {
    Activation.NONE: 0,
    Activation.RELU: 1,
    Activation.SIGMOID: 2,
    Activation.LOG_SIGMOID: 3,
}


class Mode(str, enum.Enum):
    TRAIN = "train"
    EVAL = "eval"


@dataclass
class DenseLayer:
    weights: np.ndarray  # fan_in x fan_out
    bias: np.ndarray  # fan_out
    activation: Activation = Activation.NONE
    dropout_rate: float = 0.0

    def __post_init__(self):
        self.activation = Activation(self.activation)
        if self.weights.ndim != 2:
            raise DimensionError(f"weights must be 2-D, got shape {self.weights.shape}")
        if self.bias.shape != (self.weights.shape[1],):
            raise DimensionError(
                f"bias shape {self.bias.shape} does not match fan_out {self.weights.shape[1]}"
            )
        if not 0.0 <= self.dropout_rate < 1.0:
            raise InvalidInputError(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")

    @property
    def fan_in(self):
        return self.weights.shape[0]

    @property
    def fan_out(self):
        return self.weights.shape[1]

    def parameters(self):
        return [self.weights, self.bias]

    def __str__(self):
        return f"Dense({self.fan_in}->{self.fan_out}, {self.activation.value}, dropout={self.dropout_rate})"


@dataclass
class ForwardCache:
    weights: np.ndarray
    activation: Activation
    inputs: np.ndarray
    pre_activation: np.ndarray
    output: np.ndarray
    # Inverted-dropout multiplier (0 or 1/(1-rate)); None when no dropout was applied.
    dropout_scale: Optional[np.ndarray] = None


def init_params(fan_in, fan_out, rng, activation=Activation.NONE, dropout_rate=0.0):
    """
    Create a dense layer with fan-in scaled uniform weights and zero bias.

    Weights are drawn from U(-sqrt(1/fan_in), +sqrt(1/fan_in)).
    """
    if fan_in < 1 or fan_out < 1:
        raise InvalidInputError(f"layer dims must be >= 1, got {fan_in}x{fan_out}")
    bound = np.sqrt(1.0 / fan_in)
    weights = rng.uniform(-bound, bound, (fan_in, fan_out))
    bias = np.zeros(fan_out, dtype=np.float64)
    return DenseLayer(weights=weights, bias=bias, activation=activation, dropout_rate=dropout_rate)


def _activate(activation, z):
    if activation is Activation.NONE:
        return z
    if activation is Activation.RELU:
        return np.maximum(z, 0.0)
    if activation is Activation.SIGMOID:
        return sigmoid(z)
    return log_sigmoid(z)


def _activation_grad(activation, z, out):
    if activation is Activation.NONE:
        return np.ones_like(z)
    if activation is Activation.RELU:
        return (z > 0).astype(np.float64)
    if activation is Activation.SIGMOID:
        return out * (1.0 - out)
    # d/dz log(sigmoid(z)) = sigmoid(-z)
    return sigmoid(-z)


def dense_forward(layer, inputs, mode=Mode.EVAL, rng=None, mask=None):
    """
    Forward pass of one dense layer.

    Dropout is applied after the activation in Train mode only, as inverted
    dropout. Eval mode never touches `rng`.

    Args:
        layer: DenseLayer
        inputs: Matrix [batch x fan_in]
        mode: Mode.TRAIN or Mode.EVAL
        rng: Rng used to draw the dropout mask (Train mode with dropout only)
        mask: Optional pre-drawn boolean keep-mask, used instead of drawing

    Returns:
        (output [batch x fan_out], ForwardCache)
    """
    inputs = check_matrix(inputs, "layer input", cols=layer.fan_in)
    pre_activation = inputs @ layer.weights + layer.bias
    output = _activate(layer.activation, pre_activation)

    dropout_scale = None
    if Mode(mode) is Mode.TRAIN and layer.dropout_rate > 0.0:
        keep = 1.0 - layer.dropout_rate
        if mask is None:
            if rng is None:
                raise InvalidInputError("Train-mode dropout needs an rng or a mask")
            mask = rng.keep_mask(keep, output.shape)
        elif mask.shape != output.shape:
            raise DimensionError(f"dropout mask shape {mask.shape} != output shape {output.shape}")
        dropout_scale = mask.astype(np.float64) / keep

    cache = ForwardCache(
        weights=layer.weights,
        activation=layer.activation,
        inputs=inputs,
        pre_activation=pre_activation,
        output=output,
        dropout_scale=dropout_scale,
    )
    if dropout_scale is not None:
        output = output * dropout_scale
    return output, cache


def dense_backward(cache, grad_output):
    """
    Backward pass matching `dense_forward`.

    Args:
        cache: ForwardCache from the forward pass
        grad_output: Gradient w.r.t. the layer output, same shape as the output

    Returns:
        (grad_input, grad_weights, grad_bias)
    """
    grad_output = check_matrix(grad_output, "grad_output")
    if grad_output.shape != cache.output.shape:
        raise DimensionError(
            f"grad_output shape {grad_output.shape} != forward output shape {cache.output.shape}"
        )
    if cache.dropout_scale is not None:
        grad_output = grad_output * cache.dropout_scale

    grad_pre = grad_output * _activation_grad(cache.activation, cache.pre_activation, cache.output)
    grad_weights = cache.inputs.T @ grad_pre
    grad_bias = grad_pre.sum(axis=0)
    grad_input = grad_pre @ cache.weights.T
    return grad_input, grad_weights, grad_bias
