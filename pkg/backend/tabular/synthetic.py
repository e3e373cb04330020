import logging
import re
from dataclasses import dataclass

import numpy as np

from lvx.exceptions import InvalidInputError
from nn.rng import Rng, STREAM_DATA
from .datasets import Dataset

logger = logging.getLogger(__name__)

DEFAULT_SYNTHETIC_WIDTH = 10

_PARAM_PATTERN = re.compile(r"^\s*(n|anomaly|sep|d)\s*=\s*([^,\s]+)\s*$")


@dataclass(frozen=True)
class SyntheticParams:
    """CLI form of gen_synthetic: total rows, anomaly fraction, separation, width."""

    n: int
    anomaly: float
    sep: float
    d: int = DEFAULT_SYNTHETIC_WIDTH

    @classmethod
    def parse(cls, text):
        """Parse "n=10000,anomaly=0.005,sep=2.5[,d=10]"."""
        values = {}
        for part in text.split(","):
            match = _PARAM_PATTERN.match(part)
            if not match:
                raise InvalidInputError(f"Bad synthetic parameter '{part}'; expected n=..,anomaly=..,sep=..[,d=..]")
            values[match.group(1)] = match.group(2)
        missing = {"n", "anomaly", "sep"} - set(values)
        if missing:
            raise InvalidInputError(f"Synthetic parameters missing: {', '.join(sorted(missing))}")
        try:
            params = cls(
                n=int(values["n"]),
                anomaly=float(values["anomaly"]),
                sep=float(values["sep"]),
                d=int(values.get("d", DEFAULT_SYNTHETIC_WIDTH)),
            )
        except ValueError as e:
            raise InvalidInputError(f"Bad synthetic parameter value: {e}")
        if not 0.0 < params.anomaly < 1.0:
            raise InvalidInputError(f"anomaly fraction must be in (0, 1), got {params.anomaly}")
        return params

    @property
    def n_anomaly(self):
        return min(self.n - 1, max(1, int(round(self.n * self.anomaly))))

    @property
    def n_normal(self):
        return self.n - self.n_anomaly

    def to_text(self):
        return f"n={self.n},anomaly={self.anomaly!r},sep={self.sep!r},d={self.d}"

    def generate(self, seed):
        return gen_synthetic(self.n_normal, self.n_anomaly, self.d, self.sep, seed)


def gen_synthetic(n_normal, n_anomaly, n_features, separation, seed):
    """
    Two isotropic unit-variance Gaussian classes.

    Normal rows are centred at the origin; anomalies at `separation` along a
    random unit direction. Rows are shuffled.

    Returns:
        Dataset (unscaled features)
    """
    if n_normal < 1 or n_anomaly < 1:
        raise InvalidInputError(f"class counts must be >= 1, got {n_normal} normal / {n_anomaly} anomalies")
    if n_features < 2:
        raise InvalidInputError(f"D must be >= 2, got {n_features}")
    if separation < 0:
        raise InvalidInputError(f"separation must be >= 0, got {separation}")

    rng = Rng(seed, STREAM_DATA)
    direction = rng.normal((n_features,))
    direction /= np.linalg.norm(direction)

    normal = rng.normal((n_normal, n_features))
    anomalies = rng.normal((n_anomaly, n_features)) + separation * direction
    features = np.vstack([normal, anomalies])
    labels = np.concatenate([np.zeros(n_normal, dtype=np.int64), np.ones(n_anomaly, dtype=np.int64)])

    order = rng.permutation(features.shape[0])
    dataset = Dataset(features[order], labels[order], [f"x{i}" for i in range(n_features)])
    logger.info(
        f"Generated synthetic data: {n_normal} normal, {n_anomaly} anomalies, D={n_features}, sep={separation}"
    )
    return dataset
