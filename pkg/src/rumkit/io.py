"""JSON framework files.

Example::

    {
      "dimension": 2,
      "radicand": 0,
      "periods": [["4", "0"]],
      "vertices": [["0", "0"], ["0", "4"], ["1", "3"]],
      "edges": [{"kappa": 1, "tau": 2, "delta": [0]}, ...]
    }

Vertex indices in the file are 1-based.  Scalars are strings in the grammar
``R`` or ``R+R*sqrt(D)`` with ``R = [-]int[/int]``; plain JSON integers are
accepted as well.
"""

from __future__ import annotations

import json
from pathlib import Path

from .framework import CrystalFramework, EdgeSpec, FrameworkError, Motif, TranslationGroup, new_framework
from .scalar import ExactScalar, parse_scalar

__all__ = ["ParseError", "load_framework", "parse_framework", "save_framework", "serialize_framework"]


class ParseError(ValueError):
    def __init__(self, message: str, field: str | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.field = field
        self.line = line


def _scalar(value, field: str, radicand: int) -> ExactScalar:
    if isinstance(value, bool):
        raise ParseError("expected a scalar literal", field)
    if isinstance(value, int):
        return ExactScalar(value)
    if not isinstance(value, str):
        raise ParseError(f"expected a scalar literal string, got {type(value).__name__}", field)
    try:
        s = parse_scalar(value)
    except ValueError as exc:
        raise ParseError(str(exc), field) from None
    if s.b and s.d != radicand:
        raise ParseError(f"radicand {s.d} differs from the file radicand {radicand}", field)
    return s


def _vector(value, field: str, d: int, radicand: int):
    if not isinstance(value, list):
        raise ParseError("expected an array", field)
    if len(value) != d:
        raise ParseError(f"expected {d} components, got {len(value)}", field)
    return tuple(_scalar(x, f"{field}[{i}]", radicand) for i, x in enumerate(value))


def _int(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("expected an integer", field)
    return value


def parse_framework(text: str) -> CrystalFramework:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("dimension", "periods", "vertices", "edges"):
        if key not in doc:
            raise ParseError("missing required field", key)
    d = _int(doc["dimension"], "dimension")
    if d < 1:
        raise ParseError("dimension must be positive", "dimension")
    radicand = _int(doc.get("radicand", 0), "radicand")
    periods_raw = doc["periods"]
    if not isinstance(periods_raw, list) or not periods_raw:
        raise ParseError("expected a nonempty array", "periods")
    periods = tuple(_vector(a, f"periods[{i}]", d, radicand) for i, a in enumerate(periods_raw))
    r = len(periods)
    if not isinstance(doc["vertices"], list):
        raise ParseError("expected an array", "vertices")
    vertices = tuple(_vector(p, f"vertices[{i}]", d, radicand) for i, p in enumerate(doc["vertices"]))
    if not isinstance(doc["edges"], list):
        raise ParseError("expected an array", "edges")
    edges = []
    for i, e in enumerate(doc["edges"]):
        f = f"edges[{i}]"
        if not isinstance(e, dict):
            raise ParseError("expected an object", f)
        for key in ("kappa", "tau", "delta"):
            if key not in e:
                raise ParseError("missing required field", f"{f}.{key}")
        kappa = _int(e["kappa"], f"{f}.kappa")
        tau = _int(e["tau"], f"{f}.tau")
        for key, idx in (("kappa", kappa), ("tau", tau)):
            if not 1 <= idx <= len(vertices):
                raise ParseError(f"vertex index {idx} out of range 1..{len(vertices)}", f"{f}.{key}")
        delta = e["delta"]
        if not isinstance(delta, list) or len(delta) != r:
            raise ParseError(f"expected an array of {r} integers", f"{f}.delta")
        delta = tuple(_int(x, f"{f}.delta[{j}]") for j, x in enumerate(delta))
        edges.append(EdgeSpec(kappa - 1, tau - 1, delta))
    try:
        return new_framework(Motif(d, vertices, tuple(edges)), TranslationGroup(periods), doc.get("name", ""))
    except FrameworkError as exc:
        raise ParseError(str(exc), exc.kind) from exc


def serialize_framework(fw: CrystalFramework) -> str:
    def vec(v):
        return "[" + ", ".join(json.dumps(x.literal()) for x in v) + "]"

    def block(items):
        return "[\n" + ",\n".join("    " + s for s in items) + "\n  ]"

    edges = [
        json.dumps({"kappa": e.kappa + 1, "tau": e.tau + 1, "delta": list(e.delta)}) for e in fw.edges
    ]
    lines = ["{"]
    if fw.name:
        lines.append(f'  "name": {json.dumps(fw.name)},')
    lines += [
        f'  "dimension": {fw.dim},',
        f'  "radicand": {fw.radicand},',
        f'  "periods": {block(vec(a) for a in fw.translations.periods)},',
        f'  "vertices": {block(vec(p) for p in fw.motif.vertices)},',
        f'  "edges": {block(edges)}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def load_framework(path) -> CrystalFramework:
    return parse_framework(Path(path).read_text(encoding="utf-8"))


def save_framework(fw: CrystalFramework, path) -> None:
    Path(path).write_text(serialize_framework(fw), encoding="utf-8")
