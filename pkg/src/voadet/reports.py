"""JSON / CSV / plain-table emission.

Integers are written to JSON as decimal strings so determinants survive
any consumer that parses numbers as doubles.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Dict, Iterable, List, Sequence


def stringify_ints(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): stringify_ints(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify_ints(v) for v in obj]
    return obj


def to_json(obj) -> str:
    return json.dumps(stringify_ints(obj), indent=2, sort_keys=True) + "\n"


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "|".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(stringify_ints(value), sort_keys=True, separators=(",", ":"))
    return "" if value is None else str(value)


def to_csv(rows: Sequence[Dict[str, object]], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def to_table(rows: Sequence[Dict[str, object]], columns: Sequence[str]) -> str:
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(x.rjust(w) for x, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def flatten_values(values: Dict[str, object], prefix: str = "") -> Iterable[tuple]:
    """Yield ``(dotted.key, leaf)`` pairs of a nested dict/list structure."""
    for key in sorted(values):
        v = values[key]
        path = f"{prefix}{key}"
        if isinstance(v, dict):
            yield from flatten_values(v, path + ".")
        elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
            for i, x in enumerate(v):
                if isinstance(x, dict):
                    yield from flatten_values(x, f"{path}.{i}.")
                else:
                    yield f"{path}.{i}", x
        else:
            yield path, v


def checks_to_long_rows(results) -> List[Dict[str, object]]:
    """One CSV row per (check, value) leaf; the check's own status is its first row."""
    rows = []
    for idx, r in enumerate(results):
        params = _cell(r.params)
        rows.append({"check": idx, "name": r.name, "params": params,
                     "key": "passed", "value": r.passed})
        if r.error:
            rows.append({"check": idx, "name": r.name, "params": params,
                         "key": "error", "value": r.error})
        for key, leaf in flatten_values(r.values):
            rows.append({"check": idx, "name": r.name, "params": params, "key": key, "value": leaf})
    return rows
