import json
import logging
import platform
import sys
from pathlib import Path

import numpy as np
import pandas as pd
from django.utils import timezone

from lvx.utils import git_describe
from reports.tables import ReportLayout

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def build_manifest(config, layout, results, elapsed, files):
    """
    Describe a run well enough to repeat it exactly.

    Args:
        config: RunConfig
        layout: ReportLayout
        results: FoldResults of the run
        elapsed: Wall time in seconds
        files: Report files written next to the manifest
    """
    layout = ReportLayout(layout)
    manifest = {
        "command": "reproduce",
        "table": layout.value,
        "seed": config.seed,
        "config": config.to_dict(),
        "git_describe": git_describe(),
        "created_at": timezone.now().isoformat(),
        "wall_time_seconds": round(elapsed, 3),
        "versions": {
            "python": sys.version.split()[0],
            "numpy": np.__version__,
            "pandas": pd.__version__,
            "platform": platform.platform(),
        },
        "files": [Path(f).name for f in files],
        "jobs": [
            {
                "method": r.method.value,
                "fold": r.fold + 1,
                "expansion_dim": r.expansion_dim,
                "auroc": r.auroc,
                "n_train": r.n_train,
                "n_test": r.n_test,
                "checksums": {name: trace.checksum for name, trace in r.traces.items()},
            }
            for r in results
        ],
    }
    if layout in (ReportLayout.TABLE1, ReportLayout.TABLE2):
        manifest["note"] = "Single-split table: uses fold 1's train/test arrangement of the K-fold plan."
    return manifest


def write_manifest(out_dir, manifest):
    path = Path(out_dir) / MANIFEST_NAME
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote manifest {path}")
    return path


def read_manifest(run_dir):
    path = Path(run_dir) / MANIFEST_NAME
    if not path.exists():
        return None
    return json.loads(path.read_text(encoding="utf-8"))
