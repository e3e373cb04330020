import logging
from pathlib import Path

import pandas as pd

from .constants import UNDEFINED
from .tables import ReportLayout

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["table", "method", "fold_or_dim", "auroc", "seed"]


def _fmt(value, digits=3):
    return UNDEFINED if value is None else f"{value:.{digits}f}"


def _row_header(layout):
    if layout is ReportLayout.TABLE1:
        return "Method"
    if layout is ReportLayout.TABLE2:
        return "Expansion dimension"
    return "Fold"


def render_text(report):
    """
    Aligned plain-text table in the published layout.

    Methods are columns; folds, dimensions or methods are rows. Each method
    column is followed by the published value for the same cell, where known.
    Mean and std rows are additions and are labelled as such.
    """
    layout = report.layout
    header = [_row_header(layout)]
    body = []

    if layout is ReportLayout.TABLE1:
        header += ["AUROC", "published"]
        for row in report.rows:
            body.append([row.method.label, _fmt(row.auroc), _fmt(row.published_auroc) if row.published_auroc else "-"])
    else:
        methods = layout.methods
        for method in methods:
            header += [f"{method.label} AUROC", "published"]
        keys = []
        for row in report.rows:
            if row.key not in keys:
                keys.append(row.key)
        for key in keys:
            label = f"{key} (added)" if key in ("mean", "std") else key
            line = [label]
            for method in methods:
                row = report.cell(method, key)
                line += [_fmt(row.auroc), _fmt(row.published_auroc) if row.published_auroc else "-"]
            body.append(line)

    widths = [max(len(str(line[i])) for line in [header] + body) for i in range(len(header))]

    def render(line):
        return "  ".join(str(cell).ljust(width) for cell, width in zip(line, widths)).rstrip()

    rule = "-" * len(render(header))
    lines = [
        f"{layout.title}",
        f"seed={report.seed} K={report.k}",
        rule,
        render(header),
        rule,
    ]
    lines += [render(line) for line in body]
    lines.append(rule)
    return "\n".join(lines) + "\n"


def report_frame(report):
    records = []
    for row in report.rows:
        records.append({
            "table": report.layout.name_slug,
            "method": row.method.value,
            "fold_or_dim": row.key,
            "auroc": UNDEFINED if row.auroc is None else repr(row.auroc),
            "seed": report.seed,
        })
    return pd.DataFrame.from_records(records, columns=CSV_COLUMNS)


def write_report(report, out_dir):
    """
    Write `<layout>.txt` and `<layout>.csv` into `out_dir`.

    Returns:
        (text_path, csv_path)
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    text_path = out_dir / f"{report.layout.name_slug}.txt"
    csv_path = out_dir / f"{report.layout.name_slug}.csv"
    text_path.write_text(render_text(report), encoding="utf-8")
    report_frame(report).to_csv(csv_path, index=False, lineterminator="\n")
    logger.info(f"Wrote {text_path} and {csv_path}")
    return text_path, csv_path
