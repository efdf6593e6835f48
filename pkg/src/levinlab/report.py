"""Deterministic JSON/CSV report emission."""
from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
from fractions import Fraction
from pathlib import Path

from .costgraph import CompGraph
from .refmachine import Program

TOOL_VERSION = "0.1.0"


def rational(value: Fraction) -> dict:
    return {"num": str(value.numerator), "den": str(value.denominator)}


def to_jsonable(obj):
    """Convert workbench values into plain JSON data with a stable layout."""
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, Program):
        return obj.bits
    if hasattr(obj, "_asdict"):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if isinstance(obj, CompGraph):
        return obj.to_json()
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Program):
        return value.bits
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, float):
        return repr(value)
    return str(value)


def json_text(results) -> str:
    return json.dumps(to_jsonable(results), indent=2) + "\n"


def csv_text(rows) -> str:
    rows = list(rows)
    buf = io.StringIO()
    if rows:
        header = list(rows[0].keys())
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row[h]) for h in header])
    return buf.getvalue()


def emit_report(results: dict, out_dir, stem: str, format: str = "json") -> list[Path]:
    """Write ``<stem>.json`` (always) and, for csv format, one CSV per table."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    path = out / f"{stem}.json"
    path.write_text(json_text(results))
    written.append(path)
    if format == "csv":
        for name, rows in results.get("tables", {}).items():
            path = out / f"{stem}.{name}.csv"
            path.write_text(csv_text(rows))
            written.append(path)
    return written
