"""Family files: ``{"n": int, "k": int, "sets": [[...], ...], "meta": {...}}``.

Sets are written one per line in lex order so that files diff cleanly and
re-serialising a parsed file reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .errors import DomainError
from .kneser import Family
from .setkit import Params

REPORT_FIELDS = ["name", "n", "k", "params", "lhs", "rhs", "slack", "hypotheses_met", "assertable"]


def family_to_dict(f: Family, meta: dict | None = None) -> dict:
    out = {"n": f.n, "k": f.k, "sets": [list(s) for s in f.sets()]}
    if meta:
        out["meta"] = meta
    return out


def dumps_family(f: Family, meta: dict | None = None) -> str:
    lines = ["{", f'  "n": {f.n},', f'  "k": {f.k},']
    sets = [json.dumps(list(s)) for s in f.sets()]
    if sets:
        body = ",\n".join(f"    {s}" for s in sets)
        lines.append(f'  "sets": [\n{body}\n  ]' + ("," if meta else ""))
    else:
        lines.append('  "sets": []' + ("," if meta else ""))
    if meta:
        lines.append(f'  "meta": {json.dumps(meta, sort_keys=True)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def loads_family(text: str) -> tuple[Family, dict | None]:
    try:
        data = json.loads(text)
        n, k, sets = int(data["n"]), int(data["k"]), data["sets"]
    except (ValueError, KeyError, TypeError) as exc:
        raise DomainError(f"not a family file: {exc}") from exc
    p = Params(n, k)
    fam = Family.of(p, [tuple(s) for s in sets])
    if len(fam) != len(sets):
        raise DomainError("family file lists a set twice")
    return fam, data.get("meta")


def write_family(path: str | Path, f: Family, meta: dict | None = None) -> None:
    Path(path).write_text(dumps_family(f, meta), encoding="utf-8")


def read_family(path: str | Path) -> tuple[Family, dict | None]:
    return loads_family(Path(path).read_text(encoding="utf-8"))


def reports_csv(reports) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_FIELDS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(r.record())
    return buf.getvalue()


def reports_json(reports) -> str:
    return json.dumps([r.record() for r in reports], indent=2)
