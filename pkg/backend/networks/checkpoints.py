"""
Binary checkpoint format for trained models.

Layout (little-endian):

  magic            4 bytes  b"LVXM"
  version          u32
  kind             u8
  input_dim        u32
  latent_dim       u32
  expansion_dim    u32
  dropout_rate     f64
  n_encoder        u32
  n_decoder        u32
  n_head           u32
  per layer:
    fan_in         u32
    fan_out        u32
    activation     u8
    dropout_rate   f64
    weights        fan_in * fan_out f64, row-major
    bias           fan_out f64

The file must end exactly after the last layer.
"""
import logging
import struct
from pathlib import Path

import numpy as np
from django.conf import settings

from lvx.exceptions import CheckpointFormatError, LVXError
from nn.layers import Activation, DenseLayer
from .builders import Model
from .specs import LayerSpec, ModelKind, ModelSpec

logger = logging.getLogger(__name__)

MAGIC = b"LVXM"
_HEADER = struct.Struct("<4sIBIIIdIII")
_LAYER = struct.Struct("<IIBd")
_FLOAT = np.dtype("<f8")


def format_version():
    return int(settings.LVX["CHECKPOINT_VERSION"])


def dump_model(model):
    spec = model.spec
    chunks = [
        _HEADER.pack(
            MAGIC,
            format_version(),
            spec.kind.code,
            spec.input_dim,
            spec.latent_dim,
            spec.expansion_dim,
            float(spec.dropout_rate),
            len(model.encoder),
            len(model.decoder),
            len(model.head),
        )
    ]
    for layer in model.layers():
        chunks.append(_LAYER.pack(layer.fan_in, layer.fan_out, layer.activation.code, float(layer.dropout_rate)))
        chunks.append(np.ascontiguousarray(layer.weights, dtype=_FLOAT).tobytes())
        chunks.append(np.ascontiguousarray(layer.bias, dtype=_FLOAT).tobytes())
    return b"".join(chunks)


def load_model(payload):
    """
    Parse a checkpoint. No partial model is ever returned.

    Raises:
        CheckpointFormatError: bad magic or version, truncation, trailing bytes,
            or layer counts that do not split into the stacks of the stored kind
    """
    if len(payload) < _HEADER.size:
        raise CheckpointFormatError(f"checkpoint too short: {len(payload)} bytes")
    magic, version, kind_code, input_dim, latent_dim, expansion_dim, dropout_rate, n_enc, n_dec, n_head = (
        _HEADER.unpack_from(payload, 0)
    )
    if magic != MAGIC:
        raise CheckpointFormatError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != format_version():
        raise CheckpointFormatError(f"unsupported checkpoint version {version}, expected {format_version()}")

    offset = _HEADER.size
    layers = []
    try:
        for _ in range(n_enc + n_dec + n_head):
            if offset + _LAYER.size > len(payload):
                raise CheckpointFormatError("checkpoint truncated inside a layer header")
            fan_in, fan_out, activation_code, layer_dropout = _LAYER.unpack_from(payload, offset)
            offset += _LAYER.size
            n_weights = fan_in * fan_out
            needed = (n_weights + fan_out) * _FLOAT.itemsize
            if offset + needed > len(payload):
                raise CheckpointFormatError("checkpoint truncated inside layer parameters")
            weights = np.frombuffer(payload, dtype=_FLOAT, count=n_weights, offset=offset)
            offset += n_weights * _FLOAT.itemsize
            bias = np.frombuffer(payload, dtype=_FLOAT, count=fan_out, offset=offset)
            offset += fan_out * _FLOAT.itemsize
            layers.append(
                DenseLayer(
                    weights=weights.reshape(fan_in, fan_out).astype(np.float64),
                    bias=bias.astype(np.float64),
                    activation=Activation.from_code(activation_code),
                    dropout_rate=layer_dropout,
                )
            )
        if offset != len(payload):
            raise CheckpointFormatError(f"{len(payload) - offset} trailing bytes after last layer")

        kind = ModelKind.from_code(kind_code)
        encoder = layers[:n_enc]
        decoder = layers[n_enc:n_enc + n_dec]
        head = layers[n_enc + n_dec:]
        if kind is not ModelKind.EXPANSION_CLASSIFIER and not encoder:
            raise CheckpointFormatError(f"{kind.value} checkpoint has an empty encoder")
        spec = ModelSpec(
            kind=kind,
            input_dim=input_dim,
            latent_dim=latent_dim,
            expansion_dim=expansion_dim,
            dropout_rate=dropout_rate,
        ) if kind is ModelKind.EXPANSION_CLASSIFIER else _autoencoder_spec(kind, input_dim, latent_dim, encoder)
        _check_stacks(spec, encoder, decoder, head)
        return Model(spec=spec, encoder=encoder, decoder=decoder, head=head)
    except CheckpointFormatError:
        raise
    except LVXError as e:
        raise CheckpointFormatError(f"checkpoint content is inconsistent: {e.detail}")


def _autoencoder_spec(kind, input_dim, latent_dim, encoder):
    spec = ModelSpec(kind=kind, input_dim=input_dim, latent_dim=latent_dim) if kind is ModelKind.BASIC_AE else None
    stored = _layer_specs(encoder)
    if spec is not None and spec.encoder_layers() == stored:
        return spec
    if kind is ModelKind.OURS_AE and latent_dim == input_dim:
        spec = ModelSpec(kind=kind, input_dim=input_dim)
        if spec.encoder_layers() == stored:
            return spec
    return ModelSpec(kind=kind, input_dim=input_dim, latent_dim=latent_dim, encoder_override=stored)


def _layer_specs(layers):
    return tuple(LayerSpec(l.fan_in, l.fan_out, l.activation, l.dropout_rate) for l in layers)


def _check_stacks(spec, encoder, decoder, head):
    """Stored stacks must be exactly what the ModelSpec derives."""
    if _layer_specs(encoder) != spec.encoder_layers():
        raise CheckpointFormatError(f"{spec.kind.value} encoder does not match its spec ({len(encoder)} layers stored)")
    if _layer_specs(decoder) != spec.decoder_layers():
        raise CheckpointFormatError(
            f"{spec.kind.value} decoder does not mirror its encoder ({len(decoder)} layers stored)"
        )
    if _layer_specs(head) != spec.head_layers():
        raise CheckpointFormatError(f"{spec.kind.value} head does not match its spec ({len(head)} layers stored)")


def save_model(model, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(dump_model(model))
    logger.info(f"Saved {model.spec.kind.value} checkpoint to {path}")
    return path


def read_model(path):
    path = Path(path)
    if not path.exists():
        raise CheckpointFormatError(f"checkpoint not found: {path}")
    return load_model(path.read_bytes())
