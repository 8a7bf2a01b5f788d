"""JSON documents for knot complexes.

A document looks like::

    {
      "name": "RHT",
      "generators": [{"id": "a", "i": 0, "j": 1}, ...],
      "differential": [{"from": "b", "to": ["a", "c"]}]
    }

Generators may also carry an integer ``grading``.  The writer is
canonical (generators sorted by (i, j, id), arrows by source then
target, ids rendered as text), so reading and rewriting a written file
reproduces it byte for byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .complex import Bifiltration, Generator, KnotComplex, format_id
from .errors import ComplexParseError


def _require_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ComplexParseError(f"{where} must be an integer, got {value!r}")
    return value


def _require_id(value: Any, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ComplexParseError(f"{where} must be a string, got {value!r}")
    return str(value)


def from_document(doc: Any, default_name: str = "K") -> KnotComplex:
    if not isinstance(doc, dict):
        raise ComplexParseError("document must be a JSON object")
    name = doc.get("name", default_name)
    if not isinstance(name, str):
        raise ComplexParseError("name must be a string")
    gens_raw = doc.get("generators")
    if not isinstance(gens_raw, list):
        raise ComplexParseError("missing or malformed 'generators' list")
    gens = []
    for n, rec in enumerate(gens_raw):
        where = f"generators[{n}]"
        if not isinstance(rec, dict):
            raise ComplexParseError(f"{where} must be an object")
        missing = [k for k in ("id", "i", "j") if k not in rec]
        if missing:
            raise ComplexParseError(f"{where} lacks {', '.join(missing)}")
        gid = _require_id(rec["id"], f"{where}.id")
        filt = Bifiltration(_require_int(rec["i"], f"{where}.i"), _require_int(rec["j"], f"{where}.j"))
        grading = rec.get("grading")
        if grading is not None:
            grading = _require_int(grading, f"{where}.grading")
        gens.append(Generator(gid, filt, grading))

    diff_raw = doc.get("differential", [])
    if not isinstance(diff_raw, list):
        raise ComplexParseError("'differential' must be a list")
    diff: dict[str, set] = {}
    for n, rec in enumerate(diff_raw):
        where = f"differential[{n}]"
        if not isinstance(rec, dict) or "from" not in rec or "to" not in rec:
            raise ComplexParseError(f"{where} needs 'from' and 'to'")
        src = _require_id(rec["from"], f"{where}.from")
        if not isinstance(rec["to"], list):
            raise ComplexParseError(f"{where}.to must be a list")
        targets = diff.setdefault(src, set())
        for t in rec["to"]:
            # repeated arrows cancel mod 2
            targets ^= {_require_id(t, f"{where}.to")}
    return KnotComplex(name, tuple(gens), {k: frozenset(v) for k, v in diff.items()})


def to_document(c: KnotComplex) -> dict:
    gens = sorted(c.generators, key=lambda g: (g.filt.i, g.filt.j, format_id(g.id)))
    records = []
    for g in gens:
        rec = {"id": format_id(g.id), "i": g.filt.i, "j": g.filt.j}
        if g.grading is not None:
            rec["grading"] = g.grading
        records.append(rec)
    arrows = []
    for g in c.generators:
        targets = sorted(format_id(t) for t in c.boundary(g.id))
        if targets:
            arrows.append({"from": format_id(g.id), "to": targets})
    arrows.sort(key=lambda a: a["from"])
    return {"name": c.name, "generators": records, "differential": arrows}


def loads(text: str, default_name: str = "K") -> KnotComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexParseError(f"invalid JSON: {exc}") from None
    return from_document(doc, default_name)


def dumps(c: KnotComplex) -> str:
    return json.dumps(to_document(c), indent=2) + "\n"


def read_complex(path: str | Path) -> KnotComplex:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ComplexParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, default_name=path.stem)


def write_complex(c: KnotComplex, path: str | Path) -> None:
    Path(path).write_text(dumps(c))
