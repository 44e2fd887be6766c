"""Deterministic report tables and CSV emission.

Tables carry raw cells (strings, ints, rationals, floats, None); rendering
is centralized so every command prints rationals exactly ("p/q") and floats
to 12 significant digits, and identical inputs yield byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .errors import IoError, SchemaMismatch
from .rationals import _RAT_TYPES, qstr, to_float


@dataclass(frozen=True)
class ReportTable:
    title: str
    header: tuple
    rows: tuple


def _is_rational(c) -> bool:
    return isinstance(c, _RAT_TYPES)


def render_cell(c) -> str:
    if c is None:
        return ""
    if isinstance(c, bool):
        return "true" if c else "false"
    if _is_rational(c):
        return qstr(c)
    if isinstance(c, float):
        return f"{c:.12g}"
    return str(c)


def rational_pair(c):
    """(exact string, 12-digit float string) for a rational cell."""
    return qstr(c), f"{to_float(c):.12g}"


def table_to_csv(table: ReportTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.header)
    for row in table.rows:
        w.writerow([render_cell(c) for c in row])
    return buf.getvalue()


def emit_csv(path, table: ReportTable) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(table_to_csv(table))
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from None


def table_to_json(table: ReportTable) -> str:
    doc = {
        "title": table.title,
        "header": list(table.header),
        "rows": [[render_cell(c) for c in row] for row in table.rows],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def save_table(path, table: ReportTable) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(table_to_json(table))
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from None


def load_table(path) -> ReportTable:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as e:
        raise IoError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise SchemaMismatch(f"not valid JSON: {e}") from None
    try:
        return ReportTable(doc["title"], tuple(doc["header"]),
                           tuple(tuple(r) for r in doc["rows"]))
    except (KeyError, TypeError) as e:
        raise SchemaMismatch(f"bad report table: {e}") from None
