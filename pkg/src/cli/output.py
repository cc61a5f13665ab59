"""
Run directory layout and writers.

    <run dir>/
      report.json        reproducible part of the report (no timestamps)
      metadata.json      wall-clock, timestamps, workers, run id
      summary.txt        one-page text summary
      tables/*.csv       rows plus every named table of the report
      run_log.jsonl      step log
      errors.jsonl       error records, when any
"""

import csv
import json
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.core.config import get_config
from src.core.logging import get_logger
from src.verify.models import ExperimentReport, ReportRow

logger = get_logger(__name__)


def make_run_dir(experiment: str, out: Optional[str] = None) -> Path:
    """``out`` when given, else a timestamped directory under the configured base."""
    if out:
        run_dir = Path(out)
    else:
        stamp = datetime.now(timezone.utc).strftime("%Y%m%d_%H%M%S")
        run_dir = get_config().base_out_dir / f"{experiment}_{stamp}"
    run_dir.mkdir(parents=True, exist_ok=True)
    return run_dir


def _cell(value: Any) -> str:
    """Locale-free text for one CSV cell; floats round-trip exactly."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value) if math.isfinite(value) else str(value).lower()
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v) for v in value)
    return str(value)


def write_table(records: Sequence[Dict[str, Any]], file_path: Path) -> Path:
    """Comma-separated table with a header line (union of keys, first-seen order)."""
    fields: List[str] = []
    for record in records:
        for key in record:
            if key not in fields:
                fields.append(key)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(fields)
        for record in records:
            writer.writerow([_cell(record.get(k)) for k in fields])
    return file_path


def _row_line(row: ReportRow) -> str:
    if row.statistic == "U*N":
        line = f"mean U·N = {row.value:.6f}"
        if row.extra.get("exact"):
            return line + ", exact"
        return line + f" ± {row.stderr:.2g}"
    where = f" at delta={row.delta:g}" if row.delta is not None else ""
    err = f" ± {row.stderr:.2g}" if row.stderr else ""
    return f"{row.statistic}{where}: {row.value:.6g}{err}"


def render_summary(report: ExperimentReport) -> str:
    """
    One-page text summary: spec, headline rows, verdicts, warnings.

    The headline of a statistic is its row at the smallest δ (the last row).
    """
    lines = [
        f"experiment: {report.experiment}",
        f"spec:       {report.spec}",
        f"seed:       {report.seed}",
        "",
    ]
    last: Dict[str, ReportRow] = {}
    for row in report.rows:
        last[row.statistic] = row
    for row in list(last.values())[:12]:
        lines.append(_row_line(row))
    lines.append("")
    for v in report.verdicts:
        status = "PASS" if v.passed else "FAIL"
        tag = "" if v.blocking else " (non-blocking)"
        lines.append(f"[{status}] {v.criterion}{tag}: {v.detail}")
    if report.warnings:
        lines.append("")
        lines.extend(f"warning: {w}" for w in report.warnings)
    lines.append("")
    lines.append("result: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines) + "\n"


def write_outputs(report: ExperimentReport, run_dir: Path, metadata: Dict[str, Any]) -> Dict[str, Path]:
    """Write report.json, metadata.json, tables and summary.txt; returns the written paths."""
    written: Dict[str, Path] = {}

    report_path = run_dir / "report.json"
    with open(report_path, "w", encoding="utf-8") as f:
        json.dump(report.to_document(include_metadata=False), f, indent=2)
        f.write("\n")
    written["report"] = report_path

    meta_path = run_dir / "metadata.json"
    with open(meta_path, "w", encoding="utf-8") as f:
        json.dump({**report.metadata, **metadata}, f, indent=2, default=str)
        f.write("\n")
    written["metadata"] = meta_path

    tables_dir = run_dir / "tables"
    written["rows"] = write_table([r.as_record() for r in report.rows], tables_dir / "rows.csv")
    written["verdicts"] = write_table([v.model_dump() for v in report.verdicts], tables_dir / "verdicts.csv")
    for name, records in report.tables.items():
        if records:
            written[name] = write_table(records, tables_dir / f"{name}.csv")

    summary_path = run_dir / "summary.txt"
    summary_path.write_text(render_summary(report), encoding="utf-8")
    written["summary"] = summary_path

    logger.info(f"Wrote {len(written)} files to {run_dir}")
    return written
