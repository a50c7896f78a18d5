"""
Report writers for the checker.

The machine report is deterministic JSON; wall-clock data goes to a
sidecar run log. Tables (threshold sweeps, category tallies, simulation
results) are written as CSV and JSON through pandas.
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

from src.core.exceptions import ReportError, ReportFormatError
from src.core.pipeline import Report
from src.utils.logger import get_logger

logger = get_logger("report_generators")


def run_log_path(report_path: str) -> Path:
    """Sidecar path for timestamps and gateway counters: ``<out>.run.json``."""
    path = Path(report_path)
    return path.with_name(path.name + ".run.json") if path.suffix != ".json" else path.with_suffix(".run.json")


class JSONReportGenerator:
    """Deterministic JSON report plus a sidecar run log."""

    def generate(self, report: Report, file_path: str) -> str:
        path = Path(file_path)
        run_log = {
            "report": path.name,
            "generated_at": datetime.now(timezone.utc).isoformat(),
            **report.run_info,
        }
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(report.to_dict(), f, ensure_ascii=False, indent=2)
                f.write("\n")
            with open(run_log_path(file_path), 'w', encoding='utf-8') as f:
                json.dump(run_log, f, ensure_ascii=False, indent=2, default=str)
                f.write("\n")
        except OSError as e:
            raise ReportError(f"Cannot write report {path}: {e}")

        logger.info(f"JSON report generated: {path}")
        return str(path)

    @staticmethod
    def load(file_path: str) -> Report:
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except FileNotFoundError:
            raise ReportFormatError(file_path, "file not found")
        except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ReportFormatError(file_path, str(e))
        if not isinstance(data, dict):
            raise ReportFormatError(file_path, "expected a JSON object")
        try:
            return Report.from_dict(data)
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ReportFormatError(file_path, f"{type(e).__name__}: {e}")


class TableReportGenerator:
    """CSV and JSON renderings of row-oriented results."""

    def generate(self, rows: List[Dict[str, Any]], base_path: str,
                 columns: Optional[List[str]] = None) -> Dict[str, str]:
        base = Path(base_path)
        frame = pd.DataFrame(rows, columns=columns)
        frame = frame.dropna(axis=1, how="all")

        csv_path = base.with_suffix(".csv")
        json_path = base.with_suffix(".json")
        try:
            base.parent.mkdir(parents=True, exist_ok=True)
            frame.to_csv(csv_path, index=False)
            frame.to_json(json_path, orient="records", indent=2, force_ascii=False)
        except OSError as e:
            raise ReportError(f"Cannot write table {base}: {e}")

        logger.info(f"Table written: {csv_path}, {json_path}")
        return {"csv": str(csv_path), "json": str(json_path)}


def render_summary(report: Report, max_issues: int = 20) -> str:
    """Human-readable summary for stderr."""
    summary = report.summary()
    lines = [
        f"Sentences: {summary['sentences']}  RTIs: {summary['rtis']}  "
        f"Pairs: {summary['pairs']}  Suspicious issues: {summary['suspicious_issues']}",
        f"Threshold d={report.config_snapshot.get('threshold')}",
    ]
    for issue in report.issues[:max_issues]:
        lines.append("")
        lines.append(f"[{issue.issue_id}] distance={issue.distance} ({issue.pair.container_kind.value})")
        lines.append(f"  RTI:       {issue.pair.rti.text}")
        lines.append(f"             -> {issue.rti_translation.target_text}")
        lines.append(f"  Container: {issue.pair.container_text}")
        lines.append(f"             -> {issue.container_translation.target_text}")
        lines.append(f"  Missing:   {' '.join(issue.missing_tokens)}")
    if len(report.issues) > max_issues:
        lines.append(f"... {len(report.issues) - max_issues} more in the report file")
    return "\n".join(lines)
