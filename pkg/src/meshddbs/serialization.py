"""The JSON graph interchange format.

A file holds ``dim``, lexicographically sorted ``vertices``, sorted index
pairs ``edges`` with i < j, and an optional free-form ``meta`` object.
Output is byte-stable: one vertex or edge per line, keys in fixed order.
"""

from __future__ import annotations

import json
from typing import Any

from meshddbs.mesh_graph import MeshSubgraph


class GraphParseError(ValueError):
    """Malformed interchange text; ``where`` is a line:column or a field path."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def dump_graph(g: MeshSubgraph, meta: dict[str, Any] | None = None) -> str:
    lines = ["{", f'  "dim": {g.dim},']
    lines.append('  "vertices": [')
    lines.extend(f"    {json.dumps(list(v))}" + ("," if i < g.order - 1 else "") for i, v in enumerate(g.vertices))
    lines.append("  ],")
    lines.append('  "edges": [')
    lines.extend(f"    [{i}, {j}]" + ("," if n < g.size - 1 else "") for n, (i, j) in enumerate(g.edges))
    if meta is None:
        lines.append("  ]")
    else:
        lines.append("  ],")
        lines.append(f'  "meta": {json.dumps(meta, sort_keys=True)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _is_int(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _line_of(text: str, field: str, index: int) -> str:
    """Best-effort line number of ``field[index]`` for files in the one-item-per-line layout."""
    lines = text.splitlines()
    for n, line in enumerate(lines):
        if f'"{field}"' in line:
            target = n + 1 + index
            if target < len(lines):
                return f"line {target + 1}, {field}[{index}]"
    return f"{field}[{index}]"


def parse_graph(text: str) -> tuple[MeshSubgraph, dict[str, Any] | None]:
    """Parse and structurally check an interchange document.

    Mesh validity (unit L1 edges) is left to the verifier; everything that
    makes the document ambiguous is rejected here.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    if not isinstance(doc, dict):
        raise GraphParseError("document", "top level must be an object")
    unknown = set(doc) - {"dim", "vertices", "edges", "meta"}
    if unknown:
        raise GraphParseError("document", f"unknown field(s) {sorted(unknown)}")
    for key in ("dim", "vertices", "edges"):
        if key not in doc:
            raise GraphParseError(key, "missing required field")

    dim = doc["dim"]
    if not _is_int(dim) or dim < 1:
        raise GraphParseError("dim", f"must be a positive integer, got {dim!r}")

    raw_vertices = doc["vertices"]
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise GraphParseError("vertices", "must be a non-empty array")
    vertices = []
    for i, v in enumerate(raw_vertices):
        if not isinstance(v, list) or len(v) != dim or not all(_is_int(c) for c in v):
            raise GraphParseError(_line_of(text, "vertices", i), f"expected {dim} integers, got {v!r}")
        vertices.append(tuple(v))
    for i in range(1, len(vertices)):
        if vertices[i - 1] >= vertices[i]:
            problem = "duplicate vertex" if vertices[i - 1] == vertices[i] else "vertices not lexicographically sorted"
            raise GraphParseError(_line_of(text, "vertices", i), f"{problem} {list(vertices[i])}")

    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise GraphParseError("edges", "must be an array")
    n = len(vertices)
    edges = []
    for e, pair in enumerate(raw_edges):
        where = _line_of(text, "edges", e)
        if not isinstance(pair, list) or len(pair) != 2 or not all(_is_int(c) for c in pair):
            raise GraphParseError(where, f"expected [i, j], got {pair!r}")
        i, j = pair
        if i == j:
            raise GraphParseError(where, f"self-loop [{i}, {j}]")
        if i > j:
            raise GraphParseError(where, f"edge [{i}, {j}] must be written with i < j")
        if i < 0 or j >= n:
            raise GraphParseError(where, f"edge [{i}, {j}] refers to a vertex outside 0..{n - 1}")
        edges.append((i, j))
    for e in range(1, len(edges)):
        if edges[e - 1] >= edges[e]:
            problem = "duplicate edge" if edges[e - 1] == edges[e] else "edges not sorted"
            raise GraphParseError(_line_of(text, "edges", e), f"{problem} {list(edges[e])}")

    meta = doc.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise GraphParseError("meta", "must be an object when present")
    return MeshSubgraph(dim, tuple(vertices), tuple(edges)), meta
