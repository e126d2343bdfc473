"""Rendering of report lists as markdown, CSV or JSON."""

import csv
import io
import json
from typing import Any, List, Sequence

from cdsw_shared.constants import CheckStatus, OutputFormat
from cdsw_shared.models import Report

CSV_FIELDS = ["check", "type", "rank", "status", "wall_time_ms", "params", "details", "witness"]

# lists longer than this are summarized in the markdown table
_MD_LIST_LIMIT = 12


def _compact(value: Any) -> Any:
    if isinstance(value, list) and len(value) > _MD_LIST_LIMIT:
        return f"[{len(value)} items]"
    if isinstance(value, list):
        return [_compact(v) for v in value]
    if isinstance(value, dict):
        return {k: _compact(v) for k, v in value.items()}
    return value


def _md_cell(value: Any) -> str:
    text = json.dumps(_compact(value), separators=(",", ":"), default=str)
    return text.replace("|", "\\|")


def render_markdown(reports: Sequence[Report]) -> str:
    """One table row per report; long lists are summarized."""
    lines = [
        "| check | type | status | details | witness | ms |",
        "|---|---|---|---|---|---|",
    ]
    for r in reports:
        witness = _md_cell(r.witness) if r.witness else ""
        lines.append(
            f"| {r.check} | {r.type}{r.rank} | {r.status} | {_md_cell(r.details)} "
            f"| {witness} | {r.wall_time_ms} |"
        )
    return "\n".join(lines)


def render_csv(reports: Sequence[Report]) -> str:
    """CSV with JSON-encoded params, details and witness columns."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        row = r.to_json()
        writer.writerow(
            {
                "check": row["check"],
                "type": row["type"],
                "rank": row["rank"],
                "status": row["status"],
                "wall_time_ms": row["wall_time_ms"],
                "params": json.dumps(row["params"], sort_keys=True),
                "details": json.dumps(row["details"], sort_keys=True),
                "witness": json.dumps(row["witness"], sort_keys=True) if row["witness"] else "",
            }
        )
    return buffer.getvalue().rstrip("\n")


def render_json(reports: Sequence[Report]) -> str:
    """JSON array of reports in field order."""
    return json.dumps([r.to_json() for r in reports], indent=2)


def render(reports: Sequence[Report], fmt: OutputFormat | str) -> str:
    """Render in the selected format."""
    fmt = OutputFormat(fmt)
    if fmt == OutputFormat.CSV:
        return render_csv(reports)
    if fmt == OutputFormat.JSON:
        return render_json(reports)
    return render_markdown(reports)


def exit_code(reports: List[Report], direct: bool = False) -> int:
    """
    0 when nothing failed, 1 on any failure.

    For a single direct computation a skipped-resource report is an error (2).
    """
    if any(r.failed for r in reports):
        return 1
    if direct and any(r.status == CheckStatus.SKIPPED_RESOURCE.value for r in reports):
        return 2
    return 0
