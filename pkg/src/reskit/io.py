"""Graph files (JSON) and Graphviz DOT export.

A graph file looks like::

    {
      "format_version": "1",
      "vertices": [{"id": 0, "color": "black"}, ...],
      "edges": [{"id": 0, "u": 0, "v": 1}, ...],
      "rotations": {"0": [0, 5], ...},
      "outer_face": {"edge": 0, "from": 0}
    }

Rotations list edge ids clockwise.  ``outer_face`` is optional; for a
disconnected graph it may be a list with one dart per component.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .cube import CubeEmbedding, DaisyCertificate, SimpleGraph
from .errors import SchemaError
from .plane_graph import PlaneBipartiteGraph
from .resonance import ResonanceGraph

FORMAT_VERSION = "1"


def to_dict(g: PlaneBipartiteGraph) -> dict[str, Any]:
    darts = sorted(f.darts[0] for f in g.infinite_faces)
    out: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "vertices": [{"id": v, "color": g.color(v).value} for v in sorted(g.vertices)],
        "edges": [{"id": e, "u": u, "v": v} for e, (u, v) in sorted(g.edges.items())],
        "rotations": {str(v): list(g.rotation[v]) for v in sorted(g.vertices)},
    }
    if len(darts) == 1:
        out["outer_face"] = {"edge": darts[0][0], "from": darts[0][1]}
    elif darts:
        out["outer_face"] = [{"edge": e, "from": t} for e, t in darts]
    return out


def serialize(g: PlaneBipartiteGraph) -> bytes:
    """Deterministic JSON encoding (sorted keys, sorted ids)."""
    return (json.dumps(to_dict(g), sort_keys=True, indent=2) + "\n").encode()


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: expected an integer, got {value!r}")
    return value


def _field(obj: Mapping, key: str, where: str):
    if key not in obj:
        raise SchemaError(f"{where}: missing field '{key}'")
    return obj[key]


def from_dict(data: Any) -> PlaneBipartiteGraph:
    """Validate a decoded graph file and build the graph."""
    if not isinstance(data, Mapping):
        raise SchemaError("top level: expected a JSON object")
    version = _field(data, "format_version", "top level")
    if version != FORMAT_VERSION:
        raise SchemaError(f"format_version: unsupported version {version!r}")

    vertices = _field(data, "vertices", "top level")
    if not isinstance(vertices, list):
        raise SchemaError("vertices: expected a list")
    colors = {}
    for i, item in enumerate(vertices):
        where = f"vertices[{i}]"
        if not isinstance(item, Mapping):
            raise SchemaError(f"{where}: expected an object")
        v = _int(_field(item, "id", where), f"{where}.id")
        where = f"vertices[{i}] (id {v})"
        color = _field(item, "color", where)
        if color not in ("black", "white"):
            raise SchemaError(f"{where}: color must be 'black' or 'white', got {color!r}")
        if v in colors:
            raise SchemaError(f"{where}: duplicate vertex id")
        colors[v] = color

    edges_in = _field(data, "edges", "top level")
    if not isinstance(edges_in, list):
        raise SchemaError("edges: expected a list")
    edges = {}
    for i, item in enumerate(edges_in):
        where = f"edges[{i}]"
        if not isinstance(item, Mapping):
            raise SchemaError(f"{where}: expected an object")
        e = _int(_field(item, "id", where), f"{where}.id")
        where = f"edges[{i}] (id {e})"
        u = _int(_field(item, "u", where), f"{where}.u")
        v = _int(_field(item, "v", where), f"{where}.v")
        for x in (u, v):
            if x not in colors:
                raise SchemaError(f"{where}: unknown vertex {x}")
        if e in edges:
            raise SchemaError(f"{where}: duplicate edge id")
        edges[e] = (u, v)

    rot_in = _field(data, "rotations", "top level")
    if not isinstance(rot_in, Mapping):
        raise SchemaError("rotations: expected an object keyed by vertex id")
    rotation = {}
    for key, seq in rot_in.items():
        where = f"rotations[{key!r}]"
        try:
            v = int(key)
        except (TypeError, ValueError):
            raise SchemaError(f"{where}: key is not a vertex id") from None
        if v not in colors:
            raise SchemaError(f"{where}: unknown vertex {v}")
        if not isinstance(seq, list):
            raise SchemaError(f"{where}: expected a list of edge ids")
        for e in seq:
            if _int(e, where) not in edges:
                raise SchemaError(f"{where}: unknown edge {e}")
        rotation[v] = seq
    for v in colors:
        if v not in rotation:
            raise SchemaError(f"rotations: missing entry for vertex {v}")

    hint = data.get("outer_face")
    darts = None
    if hint is not None:
        items = [hint] if isinstance(hint, Mapping) else hint
        if not isinstance(items, list):
            raise SchemaError("outer_face: expected an object or a list of objects")
        darts = []
        for i, item in enumerate(items):
            where = "outer_face" if isinstance(hint, Mapping) else f"outer_face[{i}]"
            if not isinstance(item, Mapping):
                raise SchemaError(f"{where}: expected an object")
            e = _int(_field(item, "edge", where), f"{where}.edge")
            t = _int(_field(item, "from", where), f"{where}.from")
            if e not in edges:
                raise SchemaError(f"{where}: unknown edge {e}")
            if t not in edges[e]:
                raise SchemaError(f"{where}: vertex {t} is not an end of edge {e}")
            darts.append((e, t))
    return PlaneBipartiteGraph(colors, edges, rotation, darts)


def parse(data: bytes | str) -> PlaneBipartiteGraph:
    """Parse graph-file bytes; malformed input raises SchemaError."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        decoded = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return from_dict(decoded)


def load(path) -> PlaneBipartiteGraph:
    with open(path, "rb") as fh:
        return parse(fh.read())


def dump(g: PlaneBipartiteGraph, path) -> None:
    with open(path, "wb") as fh:
        fh.write(serialize(g))


# -- DOT ---------------------------------------------------------------------


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    graph: PlaneBipartiteGraph | ResonanceGraph | SimpleGraph,
    *,
    labels: bool = False,
    colors: bool = False,
    embedding: CubeEmbedding | None = None,
    certificate: DaisyCertificate | None = None,
    name: str = "G",
) -> str:
    """Render a graph as DOT text.

    ``labels`` puts edge ids (plane graphs) or face ids (resonance graphs) on
    edges.  ``colors`` fills plane-graph vertices by color class.
    ``embedding`` or ``certificate`` annotates vertices with binary codes; a
    certificate also highlights its base vertex.
    """
    if certificate is not None:
        embedding = certificate.embedding
    lines = [f"graph {_quote(name)} {{"]
    if isinstance(graph, PlaneBipartiteGraph):
        for v in sorted(graph.vertices):
            attrs = []
            if colors:
                fill = graph.color(v).value
                font = "white" if fill == "black" else "black"
                attrs.append(f'style=filled, fillcolor={fill}, fontcolor={font}')
            lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
        for e, (u, v) in sorted(graph.edges.items()):
            lines.append(f"  {u} -- {v}" + (f' [label="{e}"]' if labels else "") + ";")
        lines.append("}")
        return "\n".join(lines) + "\n"

    if isinstance(graph, ResonanceGraph):
        n = graph.num_vertices
        edges = [((i, j), s) for i, j, s in graph.edges]
    else:
        n = graph.n
        edges = [((u, v), graph.label(u, v)) for u, v in graph.edges]
    for v in range(n):
        attrs = []
        if embedding is not None:
            attrs.append(f"label={_quote(embedding.code(v))}")
            if certificate is not None and v == certificate.base_vertex:
                attrs.append("style=filled, fillcolor=lightgrey, penwidth=2")
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for (u, v), lab in edges:
        suffix = f" [label={_quote(lab)}]" if labels and lab is not None else ""
        lines.append(f"  {u} -- {v}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
