"""
Declarative model specifications.

Layer stacks for the three architectures:

  OursAE     encoder  D->D relu, D->H relu, H->D linear          (H = max(1, D // 2))
  BasicAE    encoder  D->H relu, H->L linear                     (L = max(1, ceil(D / 4)))
  Expansion  head     latent_in->E relu dropout, E->1 log-sigmoid

Autoencoder decoders mirror the encoder in reverse and end in a sigmoid.
"""
import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from lvx.exceptions import InvalidInputError
from nn.layers import Activation

DEFAULT_EXPANSION_DIM = 1024
DEFAULT_DROPOUT_RATE = 0.5


class ModelKind(str, enum.Enum):
    BASIC_AE = "basic_ae"
    OURS_AE = "ours_ae"
    EXPANSION_CLASSIFIER = "expansion_classifier"

    @property
    def code(self):
        return list(ModelKind).index(self)

    @classmethod
    def from_code(cls, code):
        kinds = list(ModelKind)
        if not 0 <= code < len(kinds):
            raise InvalidInputError(f"Unknown model kind code {code}")
        return kinds[code]


@dataclass(frozen=True)
class LayerSpec:
    fan_in: int
    fan_out: int
    activation: Activation = Activation.NONE
    dropout_rate: float = 0.0


def half_width(input_dim):
    return max(1, input_dim // 2)


def quarter_width(input_dim):
    return max(1, math.ceil(input_dim / 4))


@dataclass(frozen=True)
class ModelSpec:
    kind: ModelKind
    input_dim: int
    latent_dim: Optional[int] = None
    expansion_dim: int = DEFAULT_EXPANSION_DIM
    dropout_rate: float = DEFAULT_DROPOUT_RATE
    encoder_override: Optional[Tuple[LayerSpec, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.latent_dim is None:
            object.__setattr__(self, "latent_dim", self._default_latent_dim())
        self.validate()

    @classmethod
    def ours_ae(cls, input_dim):
        return cls(kind=ModelKind.OURS_AE, input_dim=input_dim)

    @classmethod
    def basic_ae(cls, input_dim, latent_dim=None):
        return cls(kind=ModelKind.BASIC_AE, input_dim=input_dim, latent_dim=latent_dim)

    @classmethod
    def expansion_classifier(cls, latent_in, expansion_dim=DEFAULT_EXPANSION_DIM, dropout_rate=DEFAULT_DROPOUT_RATE):
        return cls(
            kind=ModelKind.EXPANSION_CLASSIFIER,
            input_dim=latent_in,
            latent_dim=latent_in,
            expansion_dim=expansion_dim,
            dropout_rate=dropout_rate,
        )

    def _default_latent_dim(self):
        if self.kind is ModelKind.BASIC_AE:
            return quarter_width(self.input_dim)
        if self.encoder_override:
            return self.encoder_override[-1].fan_out
        return self.input_dim

    @property
    def is_autoencoder(self):
        return self.kind is not ModelKind.EXPANSION_CLASSIFIER

    @property
    def hidden_dim(self):
        return half_width(self.input_dim)

    def validate(self):
        if self.is_autoencoder and self.input_dim < 2:
            raise InvalidInputError(f"input_dim must be >= 2 for autoencoders, got {self.input_dim}")
        if self.input_dim < 1:
            raise InvalidInputError(f"input_dim must be >= 1, got {self.input_dim}")
        if self.latent_dim < 1:
            raise InvalidInputError(f"latent_dim must be >= 1, got {self.latent_dim}")
        if self.expansion_dim < 1:
            raise InvalidInputError(f"expansion_dim must be >= 1, got {self.expansion_dim}")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise InvalidInputError(f"dropout_rate must be in [0, 1), got {self.dropout_rate}")
        if self.kind is ModelKind.OURS_AE and not self.encoder_override and self.latent_dim != self.input_dim:
            raise InvalidInputError(
                f"OursAE latent width must equal input width {self.input_dim}, got {self.latent_dim}"
            )
        if self.encoder_override:
            _check_chain(self.encoder_override, self.input_dim)
            if self.encoder_override[-1].fan_out != self.latent_dim:
                raise InvalidInputError("encoder override does not end at latent_dim")

    def encoder_layers(self):
        if not self.is_autoencoder:
            return ()
        if self.encoder_override:
            return tuple(self.encoder_override)
        d, h = self.input_dim, self.hidden_dim
        if self.kind is ModelKind.OURS_AE:
            return (
                LayerSpec(d, d, Activation.RELU),
                LayerSpec(d, h, Activation.RELU),
                LayerSpec(h, d, Activation.NONE),
            )
        return (
            LayerSpec(d, h, Activation.RELU),
            LayerSpec(h, self.latent_dim, Activation.NONE),
        )

    def decoder_layers(self):
        if not self.is_autoencoder:
            return ()
        return mirror_decoder(self.encoder_layers())

    def head_layers(self):
        if self.is_autoencoder:
            return ()
        return (
            LayerSpec(self.input_dim, self.expansion_dim, Activation.RELU, self.dropout_rate),
            LayerSpec(self.expansion_dim, 1, Activation.LOG_SIGMOID),
        )

    def all_layers(self):
        return self.encoder_layers() + self.decoder_layers() + self.head_layers()


def mirror_decoder(encoder):
    """Reverse the encoder stack: ReLU on every layer but the last, which is a sigmoid."""
    reversed_layers = [LayerSpec(layer.fan_out, layer.fan_in) for layer in reversed(encoder)]
    decoder = []
    for index, layer in enumerate(reversed_layers):
        last = index == len(reversed_layers) - 1
        decoder.append(LayerSpec(layer.fan_in, layer.fan_out, Activation.SIGMOID if last else Activation.RELU))
    return tuple(decoder)


def _check_chain(layers, input_dim):
    expected = input_dim
    for index, layer in enumerate(layers):
        if layer.fan_in != expected:
            raise InvalidInputError(f"layer {index} fan_in {layer.fan_in} != previous fan_out {expected}")
        if layer.fan_out < 1:
            raise InvalidInputError(f"layer {index} fan_out must be >= 1")
        expected = layer.fan_out
