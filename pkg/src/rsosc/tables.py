"""CSV / JSON emission for command output.

CSV: ``#``-prefixed metadata lines, then a header row and data rows.  Extra
tables follow as ``# section: <name>`` blocks.  JSON: one object with
``meta`` and ``rows`` keys, plus ``sections`` when extra tables exist.
Floats are written in shortest round-trip form (``repr``).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

from rsosc import __version__

TOOL = "rsosc"


@dataclass
class Section:
    name: str
    fields: Sequence[str]
    rows: list[dict[str, Any]]


@dataclass
class Document:
    command: str
    config: dict[str, Any]
    fields: Sequence[str]
    rows: list[dict[str, Any]]
    meta: dict[str, Any] = field(default_factory=dict)
    sections: list[Section] = field(default_factory=list)


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value + 0.0)
    return str(value)


def _json_safe(value: Any) -> Any:
    if isinstance(value, float):
        # +0.0 folds -0.0 into 0.0
        return value + 0.0 if math.isfinite(value) else repr(value)
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _write_table(buf: io.StringIO, fields: Sequence[str], rows: list[dict[str, Any]]) -> None:
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([format_cell(row.get(f)) for f in fields])


def to_csv(doc: Document) -> str:
    buf = io.StringIO()
    buf.write(f"# {TOOL} {__version__} {doc.command}\n")
    buf.write(f"# config: {json.dumps(_json_safe(doc.config), sort_keys=True)}\n")
    for key, value in doc.meta.items():
        if isinstance(value, (dict, list, tuple)):
            value = json.dumps(_json_safe(value), sort_keys=True)
        buf.write(f"# {key}: {format_cell(value)}\n")
    _write_table(buf, doc.fields, doc.rows)
    for section in doc.sections:
        buf.write(f"# section: {section.name}\n")
        _write_table(buf, section.fields, section.rows)
    return buf.getvalue()


def to_json(doc: Document) -> str:
    meta = {"tool": TOOL, "version": __version__, "command": doc.command, "config": doc.config}
    meta.update(doc.meta)
    payload: dict[str, Any] = {
        "meta": meta,
        "rows": [{f: row.get(f) for f in doc.fields} for row in doc.rows],
    }
    if doc.sections:
        payload["sections"] = {
            s.name: [{f: row.get(f) for f in s.fields} for row in s.rows] for s in doc.sections
        }
    return json.dumps(_json_safe(payload), indent=2) + "\n"


def render(doc: Document, fmt: str) -> str:
    if fmt == "json":
        return to_json(doc)
    if fmt == "csv":
        return to_csv(doc)
    raise ValueError(f"unknown format {fmt!r}")


def read_csv_rows(text: str) -> list[dict[str, str]]:
    """Parse the main table of a CSV document (stops at the first section)."""
    lines = []
    seen_header = False
    for line in text.splitlines():
        if line.startswith("#"):
            if seen_header:
                break
            continue
        seen_header = True
        lines.append(line)
    return list(csv.DictReader(lines))
