"""JSON surface files: a decomposition plus one Fenchel-Nielsen point.

The writer is canonical (fixed key order, one key per line, shortest
round-trip float repr), so writing what was read from a canonical file
reproduces it byte for byte.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import jsonschema

from .errors import ValidationError
from .surface import FNPoint, build_decomposition, make_fn_point

_KEYS = ("name", "pants", "gluings", "lengths", "twists")


def load_schema() -> dict:
    text = resources.files("fnlab").joinpath("data/surface.schema.json").read_text("utf-8")
    return json.loads(text)


def point_from_dict(doc: dict) -> FNPoint:
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(f"schema violation at {where}: {exc.message}") from None
    decomp = build_decomposition(doc)
    return make_fn_point(decomp, doc["lengths"], doc["twists"])


def point_to_dict(p: FNPoint) -> dict:
    d = p.decomposition
    return {
        "name": d.name,
        "pants": [list(k) for k in d.pants],
        "gluings": [[list(a), list(b)] for a, b in d.gluings],
        "lengths": list(p.lengths),
        "twists": list(p.twists),
    }


def dumps_point(p: FNPoint) -> str:
    doc = point_to_dict(p)
    lines = [f"  {json.dumps(k)}: {json.dumps(doc[k], separators=(', ', ': '))}" for k in _KEYS]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def loads_point(text: str) -> FNPoint:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"not valid JSON: {exc}") from None
    return point_from_dict(doc)


def read_point(path: str | Path) -> FNPoint:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    return loads_point(text)


def write_point(p: FNPoint, path: str | Path) -> None:
    Path(path).write_text(dumps_point(p), encoding="utf-8")
