"""
On-disk bundle for a fitted pipeline.

A bundle directory holds `pipeline.json` (method, schema, feature columns,
scaler and latent scaler bounds, model file names) plus `autoencoder.lvxm`
and/or `classifier.lvxm` in the binary checkpoint format.
"""
import json
import logging
from pathlib import Path

from lvx.exceptions import CheckpointFormatError
from networks.checkpoints import read_model, save_model
from tabular.scaling import Scaler
from training.runner import FittedPipeline, Method

logger = logging.getLogger(__name__)

PIPELINE_FILE = "pipeline.json"
AUTOENCODER_FILE = "autoencoder.lvxm"
CLASSIFIER_FILE = "classifier.lvxm"


def save_pipeline(pipeline, out_dir, schema, column_names):
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "method": pipeline.method.value,
        "schema": schema,
        "columns": list(column_names),
        "expansion_dim": pipeline.expansion_dim,
        "scaler": pipeline.scaler.to_dict(),
        "latent_scaler": pipeline.latent_scaler.to_dict() if pipeline.latent_scaler is not None else None,
        "autoencoder": None,
        "classifier": None,
    }
    if pipeline.autoencoder is not None:
        save_model(pipeline.autoencoder, out_dir / AUTOENCODER_FILE)
        payload["autoencoder"] = AUTOENCODER_FILE
    if pipeline.classifier is not None:
        save_model(pipeline.classifier, out_dir / CLASSIFIER_FILE)
        payload["classifier"] = CLASSIFIER_FILE
    (out_dir / PIPELINE_FILE).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Saved {pipeline.method.value} pipeline to {out_dir}")
    return out_dir


def load_pipeline(bundle_dir):
    """
    Load a pipeline bundle.

    Returns:
        (FittedPipeline, metadata dict with schema and columns)
    """
    bundle_dir = Path(bundle_dir)
    manifest_path = bundle_dir / PIPELINE_FILE
    if not manifest_path.exists():
        raise CheckpointFormatError(f"{bundle_dir} is not a pipeline bundle (missing {PIPELINE_FILE})")
    try:
        payload = json.loads(manifest_path.read_text(encoding="utf-8"))
        method = Method(payload["method"])
        scaler = Scaler.from_dict(payload["scaler"])
        latent_scaler = Scaler.from_dict(payload["latent_scaler"]) if payload.get("latent_scaler") else None
    except (ValueError, KeyError) as e:
        raise CheckpointFormatError(f"{manifest_path} is malformed: {e}")

    pipeline = FittedPipeline(
        method=method,
        scaler=scaler,
        latent_scaler=latent_scaler,
        autoencoder=read_model(bundle_dir / payload["autoencoder"]) if payload.get("autoencoder") else None,
        classifier=read_model(bundle_dir / payload["classifier"]) if payload.get("classifier") else None,
        expansion_dim=payload.get("expansion_dim"),
    )
    if method.uses_classifier and pipeline.classifier is None:
        raise CheckpointFormatError(f"{manifest_path} names no classifier for {method.value}")
    if method.autoencoder_kind is not None and pipeline.autoencoder is None:
        raise CheckpointFormatError(f"{manifest_path} names no autoencoder for {method.value}")
    if method.autoencoder_kind is not None and method.uses_classifier and latent_scaler is None:
        raise CheckpointFormatError(f"{manifest_path} has no latent scaler for {method.value}")
    return pipeline, {"schema": payload.get("schema"), "columns": payload.get("columns", [])}
