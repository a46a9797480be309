"""JSON instance files and DOT rendering.

An instance file holds the dimensions and the nonzero positions of every
pattern, 1-based::

    {
      "n": 3,
      "m": 3,
      "p": 3,
      "a": [[1, 1], [2, 1], [2, 2], [3, 3]],
      "b": "identity",
      "c": "identity",
      "k": [[1, 3]]
    }

``"identity"`` is accepted for ``b`` (needs ``m == n``) and ``c`` (needs
``p == n``). ``k`` is optional.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .system import (
    EdgeKind,
    FeedbackPattern,
    StructuredMatrix,
    StructuredSystem,
    SystemDigraph,
)

__all__ = [
    "InstanceError",
    "Instance",
    "parse_instance",
    "load_instance",
    "dump_instance",
    "export_dot",
    "fixture_path",
]


class InstanceError(ValueError):
    """Malformed instance file; the message names the offending field or line."""


@dataclass(frozen=True)
class Instance:
    system: StructuredSystem
    k: FeedbackPattern | None = None


def _dim(doc: dict, key: str) -> int:
    if key not in doc:
        raise InstanceError(f"field '{key}': missing")
    val = doc[key]
    if isinstance(val, bool) or not isinstance(val, int) or val < 1:
        raise InstanceError(f"field '{key}': expected a positive integer, got {val!r}")
    return val


def _pattern(doc: dict, key: str, rows: int, cols: int, *, allow_identity: bool) -> StructuredMatrix:
    if key not in doc:
        raise InstanceError(f"field '{key}': missing")
    val = doc[key]
    if val == "identity":
        if not allow_identity:
            raise InstanceError(f"field '{key}': \"identity\" is not allowed here")
        if rows != cols:
            raise InstanceError(f"field '{key}': \"identity\" needs a square pattern, this one is {rows}x{cols}")
        return StructuredMatrix.identity(rows)
    if not isinstance(val, list):
        raise InstanceError(f"field '{key}': expected a list of [row, col] pairs")
    positions = []
    for idx, item in enumerate(val):
        where = f"field '{key}[{idx}]'"
        if (
            not isinstance(item, list)
            or len(item) != 2
            or any(isinstance(x, bool) or not isinstance(x, int) for x in item)
        ):
            raise InstanceError(f"{where}: expected [row, col] integers, got {item!r}")
        r, c = item
        if not (1 <= r <= rows and 1 <= c <= cols):
            raise InstanceError(f"{where}: position [{r}, {c}] outside a {rows}x{cols} pattern (1-based)")
        positions.append((r - 1, c - 1))
    return StructuredMatrix(rows, cols, positions)


def parse_instance(data: str | dict[str, Any]) -> Instance:
    """Parse instance JSON text (or an already decoded object)."""
    if isinstance(data, str):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    else:
        doc = data
    if not isinstance(doc, dict):
        raise InstanceError("top level: expected a JSON object")
    unknown = sorted(set(doc) - {"n", "m", "p", "a", "b", "c", "k"})
    if unknown:
        raise InstanceError(f"field '{unknown[0]}': unknown field")
    n, m, p = _dim(doc, "n"), _dim(doc, "m"), _dim(doc, "p")
    a = _pattern(doc, "a", n, n, allow_identity=False)
    b = _pattern(doc, "b", n, m, allow_identity=True)
    c = _pattern(doc, "c", p, n, allow_identity=True)
    k = FeedbackPattern(_pattern(doc, "k", m, p, allow_identity=False)) if "k" in doc else None
    return Instance(StructuredSystem(a, b, c), k)


def load_instance(path: str | Path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"{path}: {exc.strerror}") from None
    try:
        return parse_instance(text)
    except InstanceError as exc:
        raise InstanceError(f"{path}: {exc}") from None


def _positions_json(mat: StructuredMatrix) -> str:
    return json.dumps([[r + 1, c + 1] for r, c in mat.positions()])


def dump_instance(sys: StructuredSystem, k: FeedbackPattern | None = None) -> str:
    """Canonical text: fixed key order, sorted positions, identity written as ``"identity"``."""
    n = sys.n
    b = '"identity"' if sys.b.is_identity() and sys.m == n else _positions_json(sys.b)
    c = '"identity"' if sys.c.is_identity() and sys.p == n else _positions_json(sys.c)
    lines = [
        f'  "n": {n}',
        f'  "m": {sys.m}',
        f'  "p": {sys.p}',
        f'  "a": {_positions_json(sys.a)}',
        f'  "b": {b}',
        f'  "c": {c}',
    ]
    if k is not None:
        lines.append(f'  "k": {_positions_json(k.matrix)}')
    return "{\n" + ",\n".join(lines) + "\n}\n"


def export_dot(sd: SystemDigraph, closed_loop: bool = True) -> str:
    """Graphviz text for a system digraph; feedback edges drawn red.

    With ``closed_loop=False`` feedback edges are left out.
    """
    name = "closed_loop" if closed_loop else "open_loop"
    out = [f"digraph {name} {{"]
    groups = (
        ("state", range(sd.n), "circle"),
        ("input", range(sd.n, sd.n + sd.m), "box"),
        ("output", range(sd.n + sd.m, sd.n + sd.m + sd.p), "diamond"),
    )
    for _, verts, shape in groups:
        for v in verts:
            out.append(f"  {sd.label(v)} [shape={shape}];")
    for u, v in sd.graph.edges:
        kind = sd.edge_kind(u, v)
        if kind is EdgeKind.E_K:
            if closed_loop:
                out.append(f'  {sd.label(u)} -> {sd.label(v)} [color="red"];')
        else:
            out.append(f"  {sd.label(u)} -> {sd.label(v)};")
    out.append("}")
    return "\n".join(out) + "\n"


def fixture_path(name: str) -> Path:
    """Path of a bundled instance file, e.g. ``fixture_path("three_chains.json")``."""
    return Path(str(resources.files("sparsefb") / "data" / name))
