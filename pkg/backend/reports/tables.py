import enum
import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from lvx.exceptions import InvalidInputError, MissingCellError
from training.runner import Method
from .constants import PUBLISHED_TABLE1, PUBLISHED_TABLE2, PUBLISHED_TABLE3, PUBLISHED_TABLE4

logger = logging.getLogger(__name__)

EXPANSION_SWEEP = (128, 256, 512, 1024)


class ReportLayout(str, enum.Enum):
    TABLE1 = "1"
    TABLE2 = "2"
    TABLE3 = "3"
    TABLE4 = "4"
    BASELINE = "baseline"

    @property
    def name_slug(self):
        return "baseline" if self is ReportLayout.BASELINE else f"table{self.value}"

    @property
    def title(self):
        return _TITLES[self]

    @property
    def methods(self):
        return _METHODS[self]

    @property
    def per_fold(self):
        return self in (ReportLayout.TABLE3, ReportLayout.TABLE4, ReportLayout.BASELINE)


_TITLES = {
    ReportLayout.TABLE1: "Autoencoder comparison with AUROC",
    ReportLayout.TABLE2: "Expansion dimension comparison with AUROC",
    ReportLayout.TABLE3: "Linear model comparison without and with expansion",
    ReportLayout.TABLE4: "BA model and Ours model performance comparison",
    ReportLayout.BASELINE: "Reconstruction-error baselines (AE trained on normal rows)",
}

_METHODS = {
    ReportLayout.TABLE1: (Method.BA_LATENT_CLF, Method.OURS_LATENT_CLF),
    ReportLayout.TABLE2: (Method.OURS_LATENT_CLF,),
    ReportLayout.TABLE3: (Method.LINEAR_RAW_E10, Method.LINEAR_RAW_E1024),
    ReportLayout.TABLE4: (Method.BA_LATENT_CLF, Method.OURS_LATENT_CLF),
    ReportLayout.BASELINE: (Method.BA_RECON_ERROR, Method.OURS_RECON_ERROR),
}


@dataclass
class ReportRow:
    method: Method
    key: str  # fold number, expansion dimension, "mean" or "std"
    auroc: Optional[float]
    published_auroc: Optional[float] = None
    summary: bool = False

    @property
    def undefined(self):
        return self.auroc is None


@dataclass
class ExperimentReport:
    layout: ReportLayout
    seed: int
    k: int
    rows: List[ReportRow] = field(default_factory=list)

    def cell(self, method, key):
        for row in self.rows:
            if row.method is Method(method) and row.key == str(key):
                return row
        raise MissingCellError(f"No cell for {Method(method).value} / {key}", cell=(Method(method).value, str(key)))

    def values(self, method):
        """Per-fold (or per-dimension) AUROC values of one method, summary rows excluded."""
        return [row.auroc for row in self.rows if row.method is Method(method) and not row.summary]


def _published(layout, method, key):
    if layout is ReportLayout.TABLE1:
        return PUBLISHED_TABLE1.get(method.value)
    if layout is ReportLayout.TABLE2:
        return PUBLISHED_TABLE2.get(int(key))
    table = PUBLISHED_TABLE3 if layout is ReportLayout.TABLE3 else PUBLISHED_TABLE4 if layout is ReportLayout.TABLE4 else {}
    values = table.get(method.value)
    if values and 1 <= int(key) <= len(values):
        return values[int(key) - 1]
    return None


def _summary_rows(method, values):
    defined = [v for v in values if v is not None]
    mean = float(np.mean(defined)) if defined else None
    std = float(np.std(defined, ddof=1)) if len(defined) > 1 else (0.0 if defined else None)
    return [
        ReportRow(method=method, key="mean", auroc=mean, summary=True),
        ReportRow(method=method, key="std", auroc=std, summary=True),
    ]


def _index(results):
    cells = {}
    for result in results:
        key = (result.method, result.fold, result.expansion_dim)
        if key in cells:
            raise InvalidInputError(
                f"duplicate result for {result.method.value}, fold {result.fold + 1}, E={result.expansion_dim}"
            )
        cells[key] = result
    return cells


def assemble_report(results, layout, k=10, seed=0, expansion_dims=EXPANSION_SWEEP):
    """
    Arrange fold results into one of the published table shapes.

    Table 1: method x AUROC (mean over the folds supplied)
    Table 2: expansion dimension (default 128, 256, 512, 1024) x AUROC
    Table 3/4 and the baseline layout: fold 1..k x two methods
    Tables 2-4 and the baseline layout end with per-method mean and std rows.

    Raises:
        MissingCellError: naming the first cell of the grid with no result
    """
    layout = ReportLayout(layout)
    cells = _index(results)
    report = ExperimentReport(layout=layout, seed=seed, k=k)

    for method in layout.methods:
        if layout is ReportLayout.TABLE1:
            found = sorted((r for (m, _, _), r in cells.items() if m is method), key=lambda r: r.fold)
            if not found:
                raise MissingCellError(f"Table1 is missing {method.label}", cell=(method.value, "mean"))
            defined = [r.auroc for r in found if r.auroc is not None]
            value = float(np.mean(defined)) if defined else None
            report.rows.append(ReportRow(method, "mean", value, _published(layout, method, "mean")))
            continue

        if layout is ReportLayout.TABLE2:
            values = []
            for dim in expansion_dims:
                found = [r for (m, _, d), r in cells.items() if m is method and d == dim]
                if not found:
                    raise MissingCellError(f"Table2 is missing {method.label} at E={dim}", cell=(method.value, str(dim)))
                result = min(found, key=lambda r: r.fold)
                values.append(result.auroc)
                report.rows.append(ReportRow(method, str(dim), result.auroc, _published(layout, method, dim)))
            report.rows.extend(_summary_rows(method, values))
            continue

        values = []
        for fold in range(k):
            found = [r for (m, f, _), r in cells.items() if m is method and f == fold]
            if not found:
                raise MissingCellError(
                    f"Table{layout.value} is missing {method.label} for fold {fold + 1}",
                    cell=(method.value, str(fold + 1)),
                )
            result = found[0]
            values.append(result.auroc)
            report.rows.append(ReportRow(method, str(fold + 1), result.auroc, _published(layout, method, fold + 1)))
        report.rows.extend(_summary_rows(method, values))

    undefined = [row for row in report.rows if row.undefined and not row.summary]
    if undefined:
        logger.warning(f"{layout.name_slug}: {len(undefined)} cell(s) have undefined AUROC")
    return report
