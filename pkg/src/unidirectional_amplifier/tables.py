"""Table records and CSV / JSON emission.

CSV numbers carry 12 significant digits in scientific notation with '\\n'
line endings, so reruns of the same configuration are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, TextIO

from .core.errors import ConfigError
from .core.types import BranchPoint, Direction, SpectrumDecomposition, StabilityReport, SweepRow

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("p_in_W", "s_in", "direction", "branch_index", "T", "stable", "isolation_db")
TRACE_COLUMNS = ("direction", "sign", "T", "s_in", "p_in_W", "stable")
STABILITY_COLUMNS = ("p_in_W", "direction", "branch_index", "T", "min_real_part", "tolerance", "verdict")
NOISE_COLUMNS = ("p_in_W", "NSR", "NSR_tilde")
SPECTRUM_COLUMNS = ("direction", "omega", "s1e", "s1o", "s2e", "s2o", "sG", "sm", "total")
TMAX_COLUMNS = ("curve", "t_max_num", "t_max_theor", "relative_error", "p_at_max_W")


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".11e")
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    return value


def sweep_records(rows: Iterable[SweepRow], curve: Optional[str] = None) -> list[dict[str, Any]]:
    """One record per power, direction and root; the isolation ratio sits on the selected roots."""
    records = []
    for row in rows:
        for direction, branches, selected in (
            (Direction.FORWARD, row.forward_branches, row.forward_selected),
            (Direction.BACKWARD, row.backward_branches, row.backward_selected),
        ):
            for index, (T, verdict) in enumerate(branches):
                record: dict[str, Any] = {}
                if curve is not None:
                    record["curve"] = curve
                record.update(
                    p_in_W=row.p_in,
                    s_in=row.s_in,
                    direction=direction,
                    branch_index=index,
                    T=T,
                    stable=verdict,
                    isolation_db=row.isolation_db if index == selected else None,
                )
                records.append(record)
    return records


def trace_records(points: Iterable[BranchPoint]) -> list[dict[str, Any]]:
    return [
        {
            "direction": point.direction,
            "sign": point.sign,
            "T": point.T,
            "s_in": point.s_in,
            "p_in_W": point.p_in,
            "stable": point.verdict,
        }
        for point in points
    ]


def stability_record(p_in: float, direction: Direction, index: int, T: float, report: StabilityReport) -> dict[str, Any]:
    return {
        "p_in_W": p_in,
        "direction": direction,
        "branch_index": index,
        "T": T,
        "min_real_part": report.min_real_part,
        "tolerance": report.tolerance,
        "verdict": report.verdict,
    }


def spectrum_records(direction: Direction, spectra: Iterable[SpectrumDecomposition]) -> list[dict[str, Any]]:
    return [
        {
            "direction": direction,
            "omega": s.omega,
            "s1e": s.s1e,
            "s1o": s.s1o,
            "s2e": s.s2e,
            "s2o": s.s2o,
            "sG": s.sG,
            "sm": s.sm,
            "total": s.total,
        }
        for s in spectra
    ]


def render(records: Sequence[Mapping[str, Any]], columns: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        payload = [{key: _json_value(record.get(key)) for key in columns} for record in records]
        return json.dumps(payload, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([format_value(record.get(key)) for key in columns])
    return buffer.getvalue()


def render_report(report: Mapping[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({key: _json_value(value) for key, value in report.items()}, indent=2) + "\n"
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("key", "value"))
    for key, value in report.items():
        if isinstance(value, (list, tuple)):
            value = ";".join(str(item) for item in value)
        writer.writerow((key, format_value(value)))
    return buffer.getvalue()


def write_text(text: str, path: Optional[str], stream: TextIO) -> None:
    if path:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info("wrote %s", path)
    else:
        stream.write(text)


def read_table(path: str | Path) -> tuple[list[str], list[dict[str, str]]]:
    """Read a CSV or JSON table back as string-valued records."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}", field="table") from exc
    if text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON table: {exc.msg}", field="table", line=exc.lineno) from exc
        if not all(isinstance(item, dict) for item in data):
            raise ConfigError("JSON table must be a list of objects", field="table")
        columns = list(data[0]) if data else []
        records = [{key: "" if value is None else str(value) for key, value in item.items()} for item in data]
        return columns, records
    reader = csv.DictReader(io.StringIO(text))
    columns = list(reader.fieldnames or [])
    records = []
    for record in reader:
        if None in record:
            raise ConfigError("row has more cells than the header", field="table", line=reader.line_num)
        records.append(record)
    return columns, records
