"""
Per-fold experiment pipelines.

Every method fits the scaler on the fold's training rows only. Latent methods
then train an autoencoder on training rows, encode train and test rows, Min-Max
scale the latents with bounds from the training rows, and train the expansion
classifier on the training representation. Test rows are scored by classifier
logit (or reconstruction error for the baselines) and summarised by AUROC.
"""
import enum
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import numpy as np

from lvx.exceptions import DimensionError, InvalidInputError, UndefinedMetricError
from lvx.utils import fold_seed
from networks.builders import Model, classify, encode, reconstruction_error
from networks.specs import ModelKind, ModelSpec
from reports.metrics import RocInput, auroc
from tabular.scaling import Scaler, apply_scaler, fit_latent_scaler, fit_scaler
from .loops import TrainTrace, train_autoencoder, train_classifier

logger = logging.getLogger(__name__)


class Method(str, enum.Enum):
    LINEAR_RAW_E10 = "LinearRaw_E10"
    LINEAR_RAW_E1024 = "LinearRaw_E1024"
    BA_LATENT_CLF = "BA_latent_clf"
    OURS_LATENT_CLF = "Ours_latent_clf"
    BA_RECON_ERROR = "BA_recon_error"
    OURS_RECON_ERROR = "Ours_recon_error"

    @property
    def autoencoder_kind(self):
        return _AUTOENCODER_KIND.get(self)

    @property
    def uses_classifier(self):
        return self not in (Method.BA_RECON_ERROR, Method.OURS_RECON_ERROR)

    @property
    def default_expansion_dim(self):
        return 10 if self is Method.LINEAR_RAW_E10 else 1024

    @property
    def label(self):
        return _LABELS[self]


_AUTOENCODER_KIND = {
    Method.BA_LATENT_CLF: ModelKind.BASIC_AE,
    Method.OURS_LATENT_CLF: ModelKind.OURS_AE,
    Method.BA_RECON_ERROR: ModelKind.BASIC_AE,
    Method.OURS_RECON_ERROR: ModelKind.OURS_AE,
}

_LABELS = {
    Method.LINEAR_RAW_E10: "Linear model w/o expansion",
    Method.LINEAR_RAW_E1024: "Linear model w/ expansion",
    Method.BA_LATENT_CLF: "BA w/ expansion",
    Method.OURS_LATENT_CLF: "Ours w/ expansion",
    Method.BA_RECON_ERROR: "BA reconstruction error",
    Method.OURS_RECON_ERROR: "Ours reconstruction error",
}


@dataclass
class FoldArtifacts:
    pipeline: "FittedPipeline"
    prediction: "Prediction"
    test_labels: np.ndarray


@dataclass
class FoldResult:
    method: Method
    fold: int
    expansion_dim: int
    seed: int
    auroc: Optional[float]
    n_train: int
    n_test: int
    traces: Dict[str, TrainTrace] = field(default_factory=dict)
    artifacts: Optional[FoldArtifacts] = None

    @property
    def auroc_undefined(self):
        return self.auroc is None

    def to_dict(self):
        return {
            "method": self.method.value,
            "fold": self.fold,
            "expansion_dim": self.expansion_dim,
            "seed": self.seed,
            "auroc": self.auroc,
            "n_train": self.n_train,
            "n_test": self.n_test,
            "traces": {name: trace.to_dict() for name, trace in self.traces.items()},
        }

    @classmethod
    def from_dict(cls, payload):
        return cls(
            method=Method(payload["method"]),
            fold=payload["fold"],
            expansion_dim=payload["expansion_dim"],
            seed=payload["seed"],
            auroc=payload["auroc"],
            n_train=payload["n_train"],
            n_test=payload["n_test"],
            traces={name: TrainTrace.from_dict(trace) for name, trace in payload["traces"].items()},
        )


def autoencoder_spec(kind, input_dim):
    if kind is ModelKind.OURS_AE:
        return ModelSpec.ours_ae(input_dim)
    return ModelSpec.basic_ae(input_dim)


@dataclass
class Prediction:
    scores: np.ndarray  # classifier logit, or reconstruction error
    log_prob: Optional[np.ndarray]  # classifier methods only
    representation: np.ndarray  # what the classifier saw (or the AE latent)


@dataclass
class FittedPipeline:
    method: Method
    scaler: Scaler
    autoencoder: Optional[Model] = None
    latent_scaler: Optional[Scaler] = None
    classifier: Optional[Model] = None
    expansion_dim: Optional[int] = None
    traces: Dict[str, TrainTrace] = field(default_factory=dict)

    @property
    def n_features(self):
        return self.scaler.n_features

    def predict(self, features):
        """Scale, encode and score raw feature rows."""
        if features.shape[1] != self.n_features:
            raise DimensionError(f"expected D={self.n_features} feature columns, got {features.shape[1]}")
        scaled = self.scaler.transform(features)
        representation = scaled
        if self.autoencoder is not None:
            representation = encode(self.autoencoder, scaled)
            if self.latent_scaler is not None:
                representation = self.latent_scaler.transform(representation)
        if self.classifier is None:
            return Prediction(scores=reconstruction_error(self.autoencoder, scaled), log_prob=None,
                              representation=representation)
        log_prob, logit = classify(self.classifier, representation)
        return Prediction(scores=logit, log_prob=log_prob, representation=representation)


def fit_pipeline(method, train, cfg, expansion_dim=None):
    """
    Fit scaler, autoencoder and classifier for `method` on training rows only.

    Args:
        method: Method
        train: Unscaled training Dataset
        cfg: TrainConfig (seed used as given)
        expansion_dim: Classifier expansion width; defaults per method

    Returns:
        FittedPipeline
    """
    method = Method(method)
    expansion_dim = expansion_dim or method.default_expansion_dim
    scaler = fit_scaler(train)
    train = apply_scaler(scaler, train)
    pipeline = FittedPipeline(method=method, scaler=scaler,
                              expansion_dim=expansion_dim if method.uses_classifier else None)

    representation = train.features
    if method.autoencoder_kind is not None:
        spec = autoencoder_spec(method.autoencoder_kind, train.n_features)
        ae_rows = train
        if cfg.normal_only_ae or not method.uses_classifier:
            ae_rows = train.subset(np.flatnonzero(train.labels == 0))
        pipeline.autoencoder, pipeline.traces["autoencoder"] = train_autoencoder(spec, ae_rows, cfg)
        representation = encode(pipeline.autoencoder, train.features)
        if method.uses_classifier:
            pipeline.latent_scaler = fit_latent_scaler(representation)
            representation = pipeline.latent_scaler.transform(representation)

    if method.uses_classifier:
        spec = ModelSpec.expansion_classifier(representation.shape[1], expansion_dim=expansion_dim)
        pipeline.classifier, pipeline.traces["classifier"] = train_classifier(spec, representation, train.labels, cfg)
    return pipeline


def run_fold(method, fold, data, plan, cfg, expansion_dim=None, keep_artifacts=False):
    """
    Execute one method's full pipeline on one fold.

    Args:
        method: Method
        fold: 0-based fold index
        data: Unscaled Dataset
        plan: FoldPlan over `data`
        cfg: TrainConfig; its seed is combined with the fold index
        expansion_dim: Override for the classifier's expansion width
        keep_artifacts: Attach the fitted pipeline and the test-row prediction

    Returns:
        FoldResult; `auroc` is None when the test fold holds a single class
    """
    method = Method(method)
    if plan.n_rows != data.n_rows:
        raise InvalidInputError(f"fold plan covers {plan.n_rows} rows, dataset has {data.n_rows}")
    expansion_dim = expansion_dim or method.default_expansion_dim
    run_seed = cfg.seed
    cfg = replace(cfg, seed=fold_seed(run_seed, fold))
    logger.info(f"Running {method.value} on fold {fold + 1}/{plan.k} (E={expansion_dim}, seed={cfg.seed})")

    train = data.subset(plan.train_indices(fold))
    test = data.subset(plan.test_indices(fold))
    pipeline = fit_pipeline(method, train, cfg, expansion_dim)
    prediction = pipeline.predict(test.features)

    try:
        value = auroc(RocInput(scores=prediction.scores, labels=test.labels))
    except UndefinedMetricError:
        logger.warning(f"{method.value} fold {fold + 1}: test fold holds a single class, AUROC undefined")
        value = None

    result = FoldResult(
        method=method,
        fold=fold,
        expansion_dim=expansion_dim,
        seed=run_seed,
        auroc=value,
        n_train=train.n_rows,
        n_test=test.n_rows,
        traces=dict(pipeline.traces),
    )
    if keep_artifacts:
        result.artifacts = FoldArtifacts(pipeline=pipeline, prediction=prediction, test_labels=test.labels)
    return result
