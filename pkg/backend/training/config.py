from dataclasses import asdict, dataclass

from django.conf import settings

from lvx.exceptions import InvalidInputError


@dataclass(frozen=True)
class TrainConfig:
    ae_epochs: int = 50
    clf_epochs: int = 20
    lr: float = 0.001
    batch_size: int = 256
    seed: int = 0
    shuffle_each_epoch: bool = True
    normal_only_ae: bool = False

    def __post_init__(self):
        if self.ae_epochs < 0 or self.clf_epochs < 0:
            raise InvalidInputError(f"epochs must be >= 0, got {self.ae_epochs}/{self.clf_epochs}")
        if self.batch_size < 1:
            raise InvalidInputError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.lr <= 0:
            raise InvalidInputError(f"lr must be > 0, got {self.lr}")

    @classmethod
    def from_settings(cls, **overrides):
        defaults = settings.LVX
        values = {
            "ae_epochs": defaults["AE_EPOCHS"],
            "clf_epochs": defaults["CLF_EPOCHS"],
            "lr": defaults["LEARNING_RATE"],
            "batch_size": defaults["BATCH_SIZE"],
            "seed": defaults["SEED"],
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, payload):
        return cls(**payload)
