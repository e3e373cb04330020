"""
Run configuration.

Precedence: command-line flags > flat key=value config file > settings and
environment defaults.
"""
import functools
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional, Tuple

from django.conf import settings

from lvx.exceptions import InvalidInputError
from lvx.utils import resolve_seed
from tabular.constants import Schema
from tabular.datasets import load_csv
from tabular.synthetic import SyntheticParams
from training.config import TrainConfig

logger = logging.getLogger(__name__)


def _parse_bool(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("true", "1", "yes", "on"):
        return True
    if text in ("false", "0", "no", "off"):
        return False
    raise InvalidInputError(f"Expected a boolean, got {value!r}")


def parse_int_list(value):
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    try:
        items = tuple(int(part) for part in str(value).split(",") if part.strip())
    except ValueError:
        raise InvalidInputError(f"Expected a comma-separated list of integers, got {value!r}")
    if not items:
        raise InvalidInputError("Expected at least one integer")
    return items


# option name -> parser; names match the long CLI flags with dashes replaced.
OPTION_PARSERS = {
    "data": str,
    "schema": str,
    "k": int,
    "seed": int,
    "epochs_ae": int,
    "epochs_clf": int,
    "lr": float,
    "batch": int,
    "expansion": parse_int_list,
    "jobs": int,
    "out": str,
    "synthetic": str,
    "stratified": _parse_bool,
    "normal_only_ae": _parse_bool,
}


def read_config_file(path):
    """
    Parse a flat key=value config file.

    Returns:
        dict of option name -> parsed value
    """
    path = Path(path)
    if not path.exists():
        raise InvalidInputError(f"Config file not found: {path}")
    values = {}
    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInputError(f"{path}:{number}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = key.strip().lstrip("-").replace("-", "_")
        if key not in OPTION_PARSERS:
            raise InvalidInputError(f"{path}:{number}: unknown key '{key}'")
        try:
            values[key] = OPTION_PARSERS[key](value.strip())
        except ValueError as e:
            raise InvalidInputError(f"{path}:{number}: bad value for '{key}': {e}")
    return values


@dataclass(frozen=True)
class RunConfig:
    data_path: Optional[str] = None
    synthetic: Optional[str] = None
    schema: Schema = Schema.CREDITCARD
    k: int = 10
    seed: int = 0
    train: TrainConfig = field(default_factory=TrainConfig)
    expansion_dims: Tuple[int, ...] = (128, 256, 512, 1024)
    expansion_override: Optional[int] = None
    stratified: bool = False
    jobs: int = 1
    out_dir: str = "runs"

    def __post_init__(self):
        object.__setattr__(self, "schema", Schema(self.schema))
        if self.k < 2:
            raise InvalidInputError(f"K must be >= 2, got {self.k}")
        if self.jobs < 1:
            raise InvalidInputError(f"--jobs must be >= 1, got {self.jobs}")
        if not self.expansion_dims:
            raise InvalidInputError("expansion sweep list must not be empty")
        if self.synthetic:
            SyntheticParams.parse(self.synthetic)

    @property
    def synthetic_params(self):
        return SyntheticParams.parse(self.synthetic) if self.synthetic else None

    def to_dict(self):
        payload = {f.name: getattr(self, f.name) for f in fields(self)}
        payload["schema"] = self.schema.value
        payload["train"] = self.train.to_dict()
        payload["expansion_dims"] = list(self.expansion_dims)
        return payload

    @classmethod
    def from_dict(cls, payload):
        payload = dict(payload)
        payload["train"] = TrainConfig.from_dict(payload["train"])
        payload["expansion_dims"] = tuple(payload["expansion_dims"])
        return cls(**payload)


def build_run_config(options, config_file=None):
    """
    Merge CLI options, an optional config file and defaults into a RunConfig.

    Args:
        options: dict of option name -> value, None meaning "not given"
        config_file: Optional path to a key=value file

    Returns:
        RunConfig
    """
    file_values = read_config_file(config_file) if config_file else {}
    defaults = settings.LVX

    def pick(name, default=None):
        value = options.get(name)
        if value is not None:
            return OPTION_PARSERS[name](value) if isinstance(value, str) and name != "data" else value
        if name in file_values:
            return file_values[name]
        return default

    seed = resolve_seed(options.get("seed"), file_values.get("seed"))
    train = TrainConfig.from_settings(
        ae_epochs=pick("epochs_ae"),
        clf_epochs=pick("epochs_clf"),
        lr=pick("lr"),
        batch_size=pick("batch"),
        seed=seed,
        normal_only_ae=bool(pick("normal_only_ae", False)),
    )
    expansion = pick("expansion")
    expansion = parse_int_list(expansion) if expansion is not None else None
    synthetic = pick("synthetic")
    data_path = pick("data")
    schema = pick("schema", Schema.GENERIC.value if synthetic and not data_path else Schema.CREDITCARD.value)

    return RunConfig(
        data_path=data_path,
        synthetic=synthetic,
        schema=schema,
        k=pick("k", defaults["K"]),
        seed=seed,
        train=train,
        expansion_dims=expansion or tuple(defaults["EXPANSION_SWEEP"]),
        expansion_override=expansion[0] if expansion and len(expansion) == 1 else None,
        stratified=bool(pick("stratified", False)),
        jobs=pick("jobs", defaults["JOBS"]),
        out_dir=pick("out", defaults["OUTPUT_DIR"]),
    )


@functools.lru_cache(maxsize=4)
def _cached_dataset(data_path, schema, synthetic, seed):
    if synthetic:
        return SyntheticParams.parse(synthetic).generate(seed)
    return load_csv(data_path, Schema(schema))


def load_run_dataset(config):
    """
    Load the dataset a run is configured for.

    Synthetic data is generated from the run seed. A missing CSV is reported
    with the schema the loader expects.
    """
    if not config.synthetic:
        if not config.data_path:
            raise InvalidInputError(
                f"No dataset given. Pass --data <csv> ({config.schema.describe()}) or --synthetic n=..,anomaly=..,sep=.."
            )
        if not Path(config.data_path).exists():
            raise InvalidInputError(
                f"Dataset file not found: {config.data_path}. Expected {config.schema.describe()}"
            )
    return _cached_dataset(config.data_path, config.schema.value, config.synthetic, config.seed)
