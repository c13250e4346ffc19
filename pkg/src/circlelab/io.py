"""Readers and writers for the emitted tables and reports.

CSV carries sweep records under the fixed header
    x,count,pi_x,delta,normalized
with floats at a configurable display precision (significant digits).
JSON documents put a meta block first ({tool, version, command, params})
followed by the payload.  Output contains no timestamps or absolute
paths, so identical invocations produce identical bytes.

Non-finite floats appear as the strings 'inf', '-inf', 'nan' in both
formats (JSON has no literal for them).
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path

from . import __version__
from .arith import LatticeRecord
from .errors import DomainError

CSV_HEADER = ("x", "count", "pi_x", "delta", "normalized")
DEFAULT_PRECISION = 12


def _check_precision(precision) -> int:
    if not isinstance(precision, int) or not (1 <= precision <= 17):
        raise DomainError(f"precision must be an integer in [1, 17], got {precision}")
    return precision


def format_float(value: float, precision: int = DEFAULT_PRECISION) -> str:
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"%.{precision}g" % value


def _rounded(value: float, precision: int):
    """Float reduced to the display precision, or a string when non-finite."""
    text = format_float(value, precision)
    if text in ("nan", "inf", "-inf"):
        return text
    return float(text)


def round_floats(obj, precision: int = DEFAULT_PRECISION):
    """Recursively apply display precision to every float in a payload."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return _rounded(obj, precision)
    if isinstance(obj, dict):
        return {k: round_floats(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v, precision) for v in obj]
    return obj


def _open_for_write(out):
    if isinstance(out, (str, Path)):
        return open(out, "w", newline=""), True
    return out, False


def write_records_csv(records, out, precision: int = DEFAULT_PRECISION) -> None:
    """Emit sweep records under the fixed header; see the module docstring."""
    precision = _check_precision(precision)
    handle, close = _open_for_write(out)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow([
                format_float(rec.x, precision),
                rec.count,
                format_float(rec.pi_x, precision),
                format_float(rec.delta, precision),
                format_float(rec.normalized, precision),
            ])
    finally:
        if close:
            handle.close()


def write_rows_csv(rows, out, precision: int = DEFAULT_PRECISION) -> None:
    """Emit homogeneous dict rows; header from the first row's keys."""
    precision = _check_precision(precision)
    rows = list(rows)
    if not rows:
        raise DomainError("no rows to write")
    header = list(rows[0].keys())
    handle, close = _open_for_write(out)
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if list(row.keys()) != header:
                raise DomainError("rows have inconsistent columns")
            writer.writerow([
                format_float(v, precision) if isinstance(v, float) else v
                for v in row.values()])
    finally:
        if close:
            handle.close()


def read_records_csv(src) -> list[LatticeRecord]:
    """Parse a records CSV (path, file object, or literal text)."""
    if isinstance(src, (str, Path)) and "\n" not in str(src):
        text = Path(src).read_text()
    elif isinstance(src, str):
        text = src
    else:
        text = src.read()
    reader = csv.reader(_io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != CSV_HEADER:
        raise DomainError(f"bad CSV header {header!r}; expected {CSV_HEADER}")
    records = []
    for row in reader:
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise DomainError(f"bad CSV row {row!r}")
        records.append(LatticeRecord(
            x=float(row[0]), count=int(row[1]), pi_x=float(row[2]),
            delta=float(row[3]), normalized=float(row[4])))
    return records


def make_document(payload: dict, command: str, params: dict) -> dict:
    """Wrap a payload with the meta block; meta comes first in the output."""
    meta = {
        "tool": "circlelab",
        "version": __version__,
        "command": command,
        "params": params,
    }
    doc = {"meta": meta}
    doc.update(payload)
    return doc


def records_document(records, command: str, params: dict) -> dict:
    rows = [{"x": r.x, "count": r.count, "pi_x": r.pi_x, "delta": r.delta,
             "normalized": r.normalized} for r in records]
    return make_document({"rows": rows}, command, params)


def write_json(doc: dict, out, precision: int = DEFAULT_PRECISION) -> None:
    precision = _check_precision(precision)
    handle, close = _open_for_write(out)
    try:
        json.dump(round_floats(doc, precision), handle, indent=2,
                  allow_nan=False)
        handle.write("\n")
    finally:
        if close:
            handle.close()


def read_json(src) -> dict:
    if isinstance(src, (str, Path)) and "\n" not in str(src):
        return json.loads(Path(src).read_text())
    if isinstance(src, str):
        return json.loads(src)
    return json.load(src)
