"""Report rows and their CSV/JSON serialization.

Rows are ordered by ``m`` then family name.  The ``value`` field is the
rendered string (exact ``p/q`` text in rational mode, scientific notation in
the float modes), so parsing an emitted file reproduces the rows exactly.
Invalid cells carry an empty value.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

__all__ = ["ReportRow", "rows_to_csv", "rows_from_csv", "rows_to_json", "rows_from_json"]


@dataclass(frozen=True)
class ReportRow:
    m: int
    family: str
    k: int
    n: int
    value: str
    valid: bool


_FIELDS = ["m", "family", "k", "n", "value", "valid"]


def rows_to_csv(rows) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_FIELDS)
    for r in rows:
        writer.writerow([r.m, r.family, r.k, r.n, r.value, "true" if r.valid else "false"])
    return out.getvalue()


def rows_from_csv(text: str) -> list[ReportRow]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != _FIELDS:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [
        ReportRow(int(m), family, int(k), int(n), value, valid == "true")
        for m, family, k, n, value, valid in reader
    ]


def rows_to_json(rows) -> str:
    payload = [
        {
            "m": r.m,
            "family": r.family,
            "k": r.k,
            "n": r.n,
            "value": r.value if r.valid else None,
            "valid": r.valid,
        }
        for r in rows
    ]
    return json.dumps(payload, indent=2)


def rows_from_json(text: str) -> list[ReportRow]:
    return [
        ReportRow(
            int(obj["m"]),
            obj["family"],
            int(obj["k"]),
            int(obj["n"]),
            obj["value"] if obj["value"] is not None else "",
            bool(obj["valid"]),
        )
        for obj in json.loads(text)
    ]
