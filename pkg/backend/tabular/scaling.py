import logging
from dataclasses import dataclass

import numpy as np

from lvx.exceptions import DimensionError, InvalidInputError
from nn.matrix import check_matrix

logger = logging.getLogger(__name__)


@dataclass
class Scaler:
    """Per-column Min-Max scaler learned from training rows."""

    minimum: np.ndarray
    maximum: np.ndarray
    clip: bool = True

    def __post_init__(self):
        self.minimum = np.asarray(self.minimum, dtype=np.float64)
        self.maximum = np.asarray(self.maximum, dtype=np.float64)
        if self.minimum.shape != self.maximum.shape or self.minimum.ndim != 1:
            raise DimensionError(f"scaler bounds shapes differ: {self.minimum.shape} vs {self.maximum.shape}")
        if np.any(self.minimum > self.maximum):
            raise InvalidInputError("scaler minimum exceeds maximum")

    @property
    def n_features(self):
        return self.minimum.shape[0]

    def _span(self):
        span = self.maximum - self.minimum
        # Constant columns map to 0.
        return np.where(span > 0, span, np.inf)

    def transform(self, features):
        features = check_matrix(features, "features", cols=self.n_features)
        scaled = (features - self.minimum) / self._span()
        if not self.clip:
            return scaled
        return np.clip(scaled, 0.0, 1.0)

    def inverse_transform(self, scaled):
        scaled = check_matrix(scaled, "scaled features", cols=self.n_features)
        return scaled * (self.maximum - self.minimum) + self.minimum

    def to_dict(self):
        return {"minimum": self.minimum.tolist(), "maximum": self.maximum.tolist(), "clip": self.clip}

    @classmethod
    def from_dict(cls, payload):
        return cls(minimum=np.array(payload["minimum"], dtype=np.float64),
                   maximum=np.array(payload["maximum"], dtype=np.float64),
                   clip=payload.get("clip", True))


def fit_scaler(train):
    """
    Learn per-column bounds from a training Dataset.

    Only the rows passed in are consulted; callers pass the training fold.
    """
    if train.n_rows == 0:
        raise InvalidInputError("cannot fit a scaler on zero rows")
    features = check_matrix(train.features, "training features")
    return Scaler(minimum=features.min(axis=0), maximum=features.max(axis=0))


def apply_scaler(scaler, data):
    """Return a copy of `data` with features mapped to [0, 1]."""
    if data.n_features != scaler.n_features:
        raise DimensionError(f"scaler fitted on {scaler.n_features} columns, data has {data.n_features}")
    return data.with_features(scaler.transform(data.features))


def fit_latent_scaler(latent):
    """
    Min-Max bounds for the encoder outputs of training rows.

    Held-out latents use the same bounds without clipping, so rows beyond the
    training range keep their order.
    """
    latent = check_matrix(latent, "training latent")
    if latent.shape[0] == 0:
        raise InvalidInputError("cannot fit a latent scaler on zero rows")
    return Scaler(minimum=latent.min(axis=0), maximum=latent.max(axis=0), clip=False)
