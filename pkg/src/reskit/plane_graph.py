"""Plane bipartite graphs given as rotation systems.

A graph is stored combinatorially: vertex colors, edges with integer ids, and
for every vertex the clockwise cyclic order of its incident edge ids.  Faces
are traced from the rotation system; no coordinates are needed.

A *dart* is a directed edge ``(edge_id, tail_vertex)``.  Tracing a face from a
dart ``(e, u)`` with head ``v`` continues with the edge that follows ``e`` in
the clockwise rotation at ``v``.  With this convention every finite face of a
straight-line drawing is traversed counterclockwise.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .errors import (
    AmbiguousOuterFace,
    BadRotation,
    DegreeNot2,
    Disconnected,
    EulerViolation,
    GraphError,
    IsK2,
    NotBipartite,
    NotElementary,
    NotOuterplane,
    NotPeripherally2Colorable,
    NotTwoConnected,
    OddSmoothing,
    OddSubdivision,
    WouldCreateMultiEdge,
)

log = logging.getLogger(__name__)

Dart = tuple[int, int]


class Color(str, enum.Enum):
    BLACK = "black"
    WHITE = "white"

    @property
    def other(self) -> "Color":
        return Color.WHITE if self is Color.BLACK else Color.BLACK


class HandleKind(str, enum.Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"
    MIXED = "mixed"


@dataclass(frozen=True)
class Face:
    """A face of the embedding, given by its boundary walk.

    ``darts`` starts at the smallest dart of the walk.  ``edges`` is the set
    E(s) of undirected edge ids on the boundary.
    """

    id: int
    darts: tuple[Dart, ...]
    infinite: bool
    edges: frozenset[int]

    @property
    def kind(self) -> str:
        return "infinite" if self.infinite else "finite"

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(t for _, t in self.darts)

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def edge_sequence(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.darts)

    @property
    def is_cycle(self) -> bool:
        """True when the boundary walk is a simple cycle."""
        n = len(self.darts)
        return n >= 2 and len(set(self.vertices)) == n and len(self.edges) == n

    @cached_property
    def edge_mask(self) -> int:
        mask = 0
        for e in self.edges:
            mask |= 1 << e
        return mask

    @cached_property
    def alternating_masks(self) -> tuple[int, int] | None:
        """Bitmasks of the boundary edges at even and odd walk positions.

        A perfect matching M makes this face M-resonant exactly when
        ``M & edge_mask`` equals one of the two masks.  ``None`` when the
        boundary is not an even simple cycle.
        """
        if not self.is_cycle or len(self.darts) % 2:
            return None
        even = odd = 0
        for i, (e, _) in enumerate(self.darts):
            if i % 2:
                odd |= 1 << e
            else:
                even |= 1 << e
        return even, odd


@dataclass(frozen=True)
class Classification:
    exterior_vertices: frozenset[int]
    interior_vertices: frozenset[int]
    exterior_edges: frozenset[int]
    interior_edges: frozenset[int]

    @property
    def is_outerplane(self) -> bool:
        return not self.interior_vertices


@dataclass(frozen=True)
class Handle:
    """A maximal path whose internal vertices all have degree 2.

    For a graph that is a single cycle the whole cycle is returned as one
    handle with ``closed=True`` (its path repeats the first vertex at the end).
    """

    path: tuple[int, ...]
    edges: tuple[int, ...]
    kind: HandleKind
    closed: bool = False

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def ends(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.path[1:-1]


@dataclass(frozen=True)
class AdjacentTriple:
    faces: tuple[int, int, int]
    shared_edges: tuple[int, int]
    line_distance: int

    @property
    def classification(self) -> str:
        return "angular" if self.line_distance % 2 == 0 else "linear"

    @property
    def is_linear(self) -> bool:
        return self.line_distance % 2 == 1


@dataclass(frozen=True)
class PeripheralColoring:
    """Outcome of the peripheral 2-colorability test, with its witness."""

    value: bool
    periphery: tuple[int, ...]
    colors: tuple[Color, ...]
    branch_colors: tuple[Color, ...]
    reason: str = ""

    def __bool__(self) -> bool:
        return self.value


def _as_color(c) -> Color:
    if isinstance(c, Color):
        return c
    try:
        return Color(str(c).lower())
    except ValueError:
        raise GraphError(f"unknown color {c!r}") from None


class PlaneBipartiteGraph:
    """Immutable plane bipartite graph.

    Parameters
    ----------
    colors:
        vertex id -> Color (or "black"/"white").
    edges:
        edge id -> (u, v).  Edge ids are non-negative integers.
    rotation:
        vertex id -> clockwise sequence of incident edge ids.
    outer_face_hint:
        a dart, or one dart per component, lying on the infinite face.
    """

    def __init__(
        self,
        colors: Mapping[int, Color | str],
        edges: Mapping[int, tuple[int, int]],
        rotation: Mapping[int, Sequence[int]],
        outer_face_hint: Dart | Sequence[Dart] | None = None,
    ):
        self._colors = {int(v): _as_color(c) for v, c in colors.items()}
        self._edges = {int(e): (int(u), int(v)) for e, (u, v) in edges.items()}
        self._rotation = {int(v): tuple(int(e) for e in rot) for v, rot in rotation.items()}
        if outer_face_hint is None:
            hints: tuple[Dart, ...] = ()
        elif len(outer_face_hint) == 2 and all(isinstance(x, int) for x in outer_face_hint):
            hints = (tuple(outer_face_hint),)
        else:
            hints = tuple((int(e), int(t)) for e, t in outer_face_hint)
        self._hints = hints
        self._hash = None
        self._validate()
        self._build_faces()

    # -- construction ---------------------------------------------------

    def _validate(self) -> None:
        vs = self._colors
        pairs = set()
        for e, (u, v) in self._edges.items():
            if e < 0:
                raise GraphError(f"edge id {e} is negative")
            if u not in vs or v not in vs:
                raise GraphError(f"edge {e} has an unknown endpoint")
            if u == v:
                raise GraphError(f"edge {e} is a loop")
            key = (min(u, v), max(u, v))
            if key in pairs:
                raise GraphError(f"edge {e} duplicates another edge between {u} and {v}")
            pairs.add(key)
            if vs[u] is vs[v]:
                raise NotBipartite(f"edge {e} joins two {vs[u].value} vertices {u} and {v}")
        if set(self._rotation) - set(vs):
            raise BadRotation("rotation given for an unknown vertex")
        count: dict[int, int] = {e: 0 for e in self._edges}
        for v in vs:
            rot = self._rotation.get(v, ())
            if len(set(rot)) != len(rot):
                raise BadRotation(f"rotation at vertex {v} repeats an edge")
            for e in rot:
                if e not in self._edges:
                    raise BadRotation(f"rotation at vertex {v} names unknown edge {e}")
                if v not in self._edges[e]:
                    raise BadRotation(f"rotation at vertex {v} lists edge {e} not incident to it")
                count[e] += 1
        bad = sorted(e for e, c in count.items() if c != 2)
        if bad:
            raise BadRotation(f"edge {bad[0]} appears {count[bad[0]]} times in the rotation lists")
        for v in vs:
            if not self._rotation.get(v):
                raise GraphError(f"vertex {v} is isolated")
        self._rotation = {v: self._rotation[v] for v in sorted(vs)}
        self._pos = {v: {e: i for i, e in enumerate(rot)} for v, rot in self._rotation.items()}

    def _dart_key(self, d: Dart) -> tuple[int, int]:
        e, t = d
        return e, 0 if self._edges[e][0] == t else 1

    def _next_dart(self, d: Dart) -> Dart:
        e, t = d
        h = self.other_end(e, t)
        rot = self._rotation[h]
        return rot[(self._pos[h][e] + 1) % len(rot)], h

    def _build_faces(self) -> None:
        seen: set[Dart] = set()
        walks: list[list[Dart]] = []
        for e in sorted(self._edges):
            u, v = self._edges[e]
            for start in ((e, u), (e, v)):
                if start in seen:
                    continue
                walk = []
                d = start
                while d not in seen:
                    seen.add(d)
                    walk.append(d)
                    d = self._next_dart(d)
                if d != start:
                    raise BadRotation("face traversal did not close up")
                walks.append(walk)

        comp_of = {}
        for i, comp in enumerate(self.components):
            for v in comp:
                comp_of[v] = i
        walk_comp = [comp_of[w[0][1]] for w in walks]
        for i, comp in enumerate(self.components):
            nv = len(comp)
            ne = sum(1 for (u, _) in self._edges.values() if comp_of[u] == i)
            nf = walk_comp.count(i)
            if nv - ne + nf != 2:
                raise EulerViolation(
                    f"component {i}: |V|-|E|+|F| = {nv}-{ne}+{nf} != 2; rotation is not planar"
                )

        # canonical start and ids
        rotated = []
        for w in walks:
            k = min(range(len(w)), key=lambda j: self._dart_key(w[j]))
            rotated.append(tuple(w[k:] + w[:k]))
        order = sorted(range(len(rotated)), key=lambda j: self._dart_key(rotated[j][0]))
        walks_sorted = [rotated[j] for j in order]
        comp_sorted = [walk_comp[j] for j in order]
        face_of = {}
        for fid, w in enumerate(walks_sorted):
            for d in w:
                face_of[d] = fid

        outer: dict[int, int] = {}
        for d in self._hints:
            if d not in face_of:
                raise GraphError(f"outer face hint {d} is not a dart of the graph")
            c = comp_of[d[1]]
            fid = face_of[d]
            if c in outer and outer[c] != fid:
                raise AmbiguousOuterFace(f"conflicting outer face hints for component {c}")
            outer[c] = fid
        for c in range(len(self.components)):
            if c in outer:
                continue
            cand = [f for f in range(len(walks_sorted)) if comp_sorted[f] == c]
            longest = max(len(walks_sorted[f]) for f in cand)
            top = [f for f in cand if len(walks_sorted[f]) == longest]
            edge_sets = {frozenset(e for e, _ in walks_sorted[f]) for f in top}
            if len(top) > 1 and len(edge_sets) > 1:
                raise AmbiguousOuterFace(
                    f"component {c}: {len(top)} faces share the longest boundary; give an outer face hint"
                )
            outer[c] = top[0]
        infinite = set(outer.values())
        self._faces = tuple(
            Face(fid, w, fid in infinite, frozenset(e for e, _ in w))
            for fid, w in enumerate(walks_sorted)
        )
        self._face_of = face_of
        self._outer_by_component = tuple(outer[c] for c in range(len(self.components)))

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self._rotation)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(sorted(self._edges))

    @property
    def edges(self) -> Mapping[int, tuple[int, int]]:
        return dict(self._edges)

    @property
    def colors(self) -> Mapping[int, Color]:
        return dict(self._colors)

    @property
    def rotation(self) -> Mapping[int, tuple[int, ...]]:
        return dict(self._rotation)

    @property
    def outer_face_hint(self) -> tuple[Dart, ...]:
        """One dart on the infinite face of every component."""
        return tuple(self._faces[f].darts[0] for f in self._outer_by_component)

    @property
    def num_vertices(self) -> int:
        return len(self._colors)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def color(self, v: int) -> Color:
        return self._colors[v]

    def endpoints(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def other_end(self, e: int, v: int) -> int:
        a, b = self._edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise GraphError(f"vertex {v} is not an end of edge {e}")

    def degree(self, v: int) -> int:
        return len(self._rotation[v])

    def incident(self, v: int) -> tuple[int, ...]:
        return self._rotation[v]

    def neighbors(self, v: int) -> list[int]:
        return [self.other_end(e, v) for e in self._rotation[v]]

    @cached_property
    def _pair_index(self) -> dict[tuple[int, int], int]:
        return {(min(u, v), max(u, v)): e for e, (u, v) in self._edges.items()}

    def edge_between(self, u: int, v: int) -> int | None:
        return self._pair_index.get((min(u, v), max(u, v)))

    @property
    def faces(self) -> tuple[Face, ...]:
        return self._faces

    @property
    def finite_faces(self) -> tuple[Face, ...]:
        return tuple(f for f in self._faces if not f.infinite)

    @property
    def infinite_faces(self) -> tuple[Face, ...]:
        return tuple(self._faces[f] for f in self._outer_by_component)

    def face_of_dart(self, d: Dart) -> Face:
        return self._faces[self._face_of[d]]

    def faces_of_edge(self, e: int) -> tuple[Face, Face]:
        u, v = self._edges[e]
        return self.face_of_dart((e, u)), self.face_of_dart((e, v))

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        seen: set[int] = set()
        out = []
        for s in sorted(self._colors):
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for e in self._rotation.get(x, ()):
                    y = self.other_end(e, x)
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return tuple(out)

    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def is_two_connected(self) -> bool:
        return self.num_vertices >= 3 and nx.is_biconnected(self.to_networkx())

    @property
    def is_k2(self) -> bool:
        return self.num_vertices == 2 and self.num_edges == 1

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        for v, c in self._colors.items():
            g.add_node(v, color=c.value)
        for e, (u, v) in self._edges.items():
            g.add_edge(u, v, id=e)
        return g

    def structure(self) -> tuple:
        """Hashable description used for structural equality."""
        return (
            tuple(sorted((v, c.value) for v, c in self._colors.items())),
            tuple(sorted(self._edges.items())),
            tuple(sorted(self._rotation.items())),
            tuple(sorted(f.darts[0] for f in self.infinite_faces)),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneBipartiteGraph):
            return NotImplemented
        return self.structure() == other.structure()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.structure())
        return self._hash

    def __repr__(self) -> str:
        return (
            f"PlaneBipartiteGraph(|V|={self.num_vertices}, |E|={self.num_edges}, "
            f"finite faces={len(self.finite_faces)})"
        )


# -- operations ---------------------------------------------------------


def from_spec(spec: Mapping) -> PlaneBipartiteGraph:
    """Build a graph from a mapping in the GraphFile layout.

    Expected keys: ``vertices`` ([{id, color}]), ``edges`` ([{id, u, v}]),
    ``rotations`` ({vertex id: [edge ids clockwise]}) and optionally
    ``outer_face`` ({edge, from} or a list of them).
    """
    colors = {int(v["id"]): v["color"] for v in spec["vertices"]}
    edges = {int(e["id"]): (int(e["u"]), int(e["v"])) for e in spec["edges"]}
    rotation = {int(v): list(rot) for v, rot in spec["rotations"].items()}
    hint = spec.get("outer_face")
    if isinstance(hint, Mapping):
        hint = [hint]
    darts = [(int(h["edge"]), int(h["from"])) for h in hint] if hint else None
    return PlaneBipartiteGraph(colors, edges, rotation, darts)


def faces(g: PlaneBipartiteGraph) -> list[Face]:
    return list(g.faces)


def classify(g: PlaneBipartiteGraph) -> Classification:
    """Split vertices and edges into exterior (on the periphery) and interior."""
    if not g.is_connected:
        raise Disconnected("exterior/interior classification needs a connected graph")
    outer = g.infinite_faces[0]
    ext_v = frozenset(outer.vertices)
    ext_e = outer.edges
    return Classification(
        exterior_vertices=ext_v,
        interior_vertices=frozenset(g.vertices) - ext_v,
        exterior_edges=ext_e,
        interior_edges=frozenset(g.edge_ids) - ext_e,
    )


def is_outerplane(g: PlaneBipartiteGraph) -> bool:
    return classify(g).is_outerplane


def _kind(edges: Iterable[int], cls: Classification) -> HandleKind:
    es = set(edges)
    if es <= cls.interior_edges:
        return HandleKind.INTERIOR
    if es <= cls.exterior_edges:
        return HandleKind.EXTERIOR
    return HandleKind.MIXED


def handles(g: PlaneBipartiteGraph) -> list[Handle]:
    """Decompose the edge set into maximal paths through degree-2 vertices."""
    cls = classify(g)
    branch = [v for v in g.vertices if g.degree(v) != 2]
    if not branch:
        start = g.vertices[0]
        path = [start]
        es = []
        e = g.incident(start)[0]
        cur = start
        while True:
            es.append(e)
            cur = g.other_end(e, cur)
            path.append(cur)
            if cur == start:
                break
            e = next(x for x in g.incident(cur) if x != e)
        return [Handle(tuple(path), tuple(es), _kind(es, cls), closed=True)]

    used: set[int] = set()
    out = []
    for b in branch:
        for e0 in sorted(g.incident(b)):
            if e0 in used:
                continue
            path, es = [b], []
            cur, e = b, e0
            while True:
                used.add(e)
                es.append(e)
                cur = g.other_end(e, cur)
                path.append(cur)
                if g.degree(cur) != 2:
                    break
                e = next(x for x in g.incident(cur) if x != e)
            h = Handle(tuple(path), tuple(es), _kind(es, cls))
            if h.kind is HandleKind.MIXED:
                log.warning("handle %s mixes interior and exterior edges", h.path)
            out.append(h)
    return out


def line_distance(g: PlaneBipartiteGraph, e: int, f: int) -> int:
    """Distance between edges e and f in the line graph, by BFS over edges."""
    if e == f:
        return 0
    dist = {e: 0}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for end in g.endpoints(x):
            for y in g.incident(end):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y == f:
                        return dist[y]
                    queue.append(y)
    raise Disconnected(f"edges {e} and {f} lie in different components")


def adjacent_triples(g: PlaneBipartiteGraph) -> list[AdjacentTriple]:
    """All adjacent triples of finite faces of a 2-connected outerplane graph.

    A triple and its reversal are reported once, with ``faces[0] < faces[2]``.
    """
    if not g.is_two_connected:
        raise NotTwoConnected("adjacent triples need a 2-connected graph")
    if not classify(g).is_outerplane:
        raise NotOuterplane("adjacent triples need an outerplane graph")
    # finite neighbours of each finite face across each shared edge
    across: dict[int, list[tuple[int, int]]] = {f.id: [] for f in g.finite_faces}
    for e in g.edge_ids:
        a, b = g.faces_of_edge(e)
        if not a.infinite and not b.infinite and a.id != b.id:
            across[a.id].append((e, b.id))
            across[b.id].append((e, a.id))
    out = []
    for mid in sorted(across):
        nbrs = sorted(across[mid])
        for e, s in nbrs:
            for f, t in nbrs:
                if e == f or s == t or s > t:
                    continue
                out.append(AdjacentTriple((s, mid, t), (e, f), line_distance(g, e, f)))
    return out


def is_peripherally_2_colorable(
    g: PlaneBipartiteGraph, check_elementary: bool = True
) -> PeripheralColoring:
    """Degrees in {2, 3}, degree-3 vertices exterior and alternating in color."""
    if g.is_k2:
        raise IsK2("K2 is excluded from peripheral 2-colorability")
    if check_elementary:
        from .matching import is_elementary

        if not is_elementary(g):
            raise NotElementary("graph is not elementary")
    cls = classify(g)
    outer = g.infinite_faces[0]
    periphery = outer.vertices
    colors = tuple(g.color(v) for v in periphery)
    branch = tuple(g.color(v) for v in periphery if g.degree(v) == 3)

    def result(ok: bool, reason: str = "") -> PeripheralColoring:
        return PeripheralColoring(ok, periphery, colors, branch, reason)

    bad_deg = [v for v in g.vertices if g.degree(v) not in (2, 3)]
    if bad_deg:
        return result(False, f"vertex {bad_deg[0]} has degree {g.degree(bad_deg[0])}")
    inner3 = [v for v in cls.interior_vertices if g.degree(v) == 3]
    if inner3:
        return result(False, f"interior vertex {min(inner3)} has degree 3")
    k = len(branch)
    for i in range(k):
        if branch[i] is branch[(i + 1) % k]:
            return result(False, "two consecutive degree-3 periphery vertices share a color")
    return result(True)


# -- local surgery --------------------------------------------------------


def _rebuild(
    g: PlaneBipartiteGraph,
    colors: dict,
    edges: dict,
    rotation: dict,
    dart_map,
) -> PlaneBipartiteGraph:
    hints = [dart_map(d) for d in g.outer_face_hint]
    return PlaneBipartiteGraph(colors, edges, rotation, hints)


def subdivide_edge(g: PlaneBipartiteGraph, edge: int, k: int) -> PlaneBipartiteGraph:
    """Replace ``edge`` by a path through ``k`` new degree-2 vertices.

    ``k`` must be even so the original end vertices keep opposite colors.
    The first segment keeps the old edge id.
    """
    if k < 1 or k % 2:
        raise OddSubdivision(f"cannot subdivide with {k} vertices; need a positive even number")
    u, v = g.endpoints(edge)
    colors = dict(g.colors)
    edges = dict(g.edges)
    rotation = {x: list(r) for x, r in g.rotation.items()}
    nv = max(colors) + 1
    ne = max(edges) + 1
    new_vs = list(range(nv, nv + k))
    new_es = [edge] + list(range(ne, ne + k))
    chain = [u] + new_vs + [v]
    c = g.color(u)
    for w in new_vs:
        c = c.other
        colors[w] = c
    for i, e in enumerate(new_es):
        edges[e] = (chain[i], chain[i + 1])
    for i, w in enumerate(new_vs):
        rotation[w] = [new_es[i], new_es[i + 1]]
    rotation[v] = [new_es[-1] if x == edge else x for x in rotation[v]]

    def dart_map(d: Dart) -> Dart:
        if d == (edge, v):
            return new_es[-1], v
        return d

    return _rebuild(g, colors, edges, rotation, dart_map)


def smooth_path(g: PlaneBipartiteGraph, vertices: Sequence[int]) -> PlaneBipartiteGraph:
    """Smooth out a run of consecutive degree-2 vertices.

    ``vertices`` must be listed in path order.  The run is replaced by one
    edge joining its two outside neighbours; it reuses the id of the edge
    entering the first vertex.  An odd run would join two vertices of the same
    color, so the run length must be even.
    """
    ws = list(vertices)
    if not ws:
        raise ValueError("nothing to smooth")
    for w in ws:
        if g.degree(w) != 2:
            raise DegreeNot2(f"vertex {w} has degree {g.degree(w)}")
    if len(ws) % 2:
        raise OddSmoothing("smoothing an odd number of vertices breaks the bipartition")
    path_edges = []
    for a, b in zip(ws, ws[1:]):
        e = g.edge_between(a, b)
        if e is None:
            raise GraphError(f"vertices {a} and {b} are not consecutive on a path")
        path_edges.append(e)
    first_in = [e for e in g.incident(ws[0]) if e not in path_edges]
    last_out = [e for e in g.incident(ws[-1]) if e not in path_edges]
    e_in, e_out = first_in[0], last_out[0]
    u = g.other_end(e_in, ws[0])
    v = g.other_end(e_out, ws[-1])
    if u == v or u in ws or v in ws:
        raise WouldCreateMultiEdge("smoothing would create a loop")
    if g.edge_between(u, v) is not None:
        raise WouldCreateMultiEdge(f"vertices {u} and {v} are already adjacent")

    removed = set(path_edges) | {e_out}
    colors = {x: c for x, c in g.colors.items() if x not in ws}
    edges = {e: p for e, p in g.edges.items() if e not in removed}
    edges[e_in] = (u, v)
    rotation = {x: list(r) for x, r in g.rotation.items() if x not in ws}
    rotation[v] = [e_in if x == e_out else x for x in rotation[v]]
    forward = {(e_in, u)} | {(e, t) for e, t in _path_darts(g, [u] + ws + [v])}

    def dart_map(d: Dart) -> Dart:
        if d[0] in removed or d[0] == e_in:
            return (e_in, u) if d in forward else (e_in, v)
        return d

    return _rebuild(g, colors, edges, rotation, dart_map)


def _path_darts(g: PlaneBipartiteGraph, path: Sequence[int]) -> list[Dart]:
    return [(g.edge_between(a, b), a) for a, b in zip(path, path[1:])]


@dataclass(frozen=True)
class OuterplanarBijection:
    """Perfect-matching bijection between a graph and its outerplanarization.

    ``contracted`` pairs each interior nontrivial handle (its edge ids in path
    order) with the single edge replacing it.  ``expanded`` pairs an exterior
    edge with the odd path that replaced it.  All other edges are unchanged.
    """

    contracted: tuple[tuple[tuple[int, ...], int], ...]
    expanded: tuple[tuple[int, tuple[int, ...]], ...]

    def apply(self, bits: int) -> int:
        out = bits
        for path, new in self.contracted:
            ends_in = bool(bits >> path[0] & 1)
            for e in path:
                out &= ~(1 << e)
            if ends_in:
                out |= 1 << new
        for old, path in self.expanded:
            in_m = bool(bits >> old & 1)
            for e in path:
                out &= ~(1 << e)
            for i, e in enumerate(path):
                if (i % 2 == 0) == in_m:
                    out |= 1 << e
        return out

    def invert(self, bits: int) -> int:
        out = bits
        for old, path in self.expanded:
            in_m = bool(bits >> path[0] & 1)
            for e in path:
                out &= ~(1 << e)
            if in_m:
                out |= 1 << old
        for path, new in self.contracted:
            in_m = bool(bits >> new & 1)
            out &= ~(1 << new)
            for i, e in enumerate(path):
                if (i % 2 == 0) == in_m:
                    out |= 1 << e
        return out


def outerplanarize(
    g: PlaneBipartiteGraph, check_elementary: bool = False
) -> tuple[PlaneBipartiteGraph, OuterplanarBijection]:
    """Contract every interior nontrivial handle to a single interior edge.

    When the handle's ends are already adjacent, that (exterior) edge is first
    subdivided into an exterior path of length 3.
    """
    if not is_peripherally_2_colorable(g, check_elementary=check_elementary):
        raise NotPeripherally2Colorable("outerplanarization needs a peripherally 2-colorable graph")
    todo = [h for h in handles(g) if h.kind is HandleKind.INTERIOR and h.length > 1]
    cur = g
    contracted = []
    expanded = []
    for h in todo:
        u, v = h.ends
        if h.length % 2 == 0:
            raise GraphError(f"interior handle {h.path} has even length")
        uv = cur.edge_between(u, v)
        if uv is not None:
            before = set(cur.edge_ids)
            a, b = cur.endpoints(uv)
            cur = subdivide_edge(cur, uv, 2)
            added = sorted(set(cur.edge_ids) - before)
            # path order from a to b: the old id first, then the new ids
            expanded.append((uv, (uv, *added)))
        cur = smooth_path(cur, h.internal)
        contracted.append((h.edges, h.edges[0]))
    return cur, OuterplanarBijection(tuple(contracted), tuple(expanded))


# -- unions and deletions --------------------------------------------------


def disjoint_union(*graphs: PlaneBipartiteGraph) -> PlaneBipartiteGraph:
    """Place graphs side by side; ids of later graphs are shifted."""
    colors, edges, rotation, hints = {}, {}, {}, []
    voff = eoff = 0
    for g in graphs:
        vmap = {v: v + voff for v in g.vertices}
        for v in g.vertices:
            colors[vmap[v]] = g.color(v)
            rotation[vmap[v]] = [e + eoff for e in g.incident(v)]
        for e, (a, b) in g.edges.items():
            edges[e + eoff] = (vmap[a], vmap[b])
        hints.extend((e + eoff, vmap[t]) for e, t in g.outer_face_hint)
        voff = max(colors) + 1
        eoff = max(edges) + 1
    return PlaneBipartiteGraph(colors, edges, rotation, hints)


@dataclass(frozen=True)
class EdgeDeletion:
    """Result of deleting an edge set from a plane graph.

    ``components`` inherit the embedding.  ``finite_regions`` are the edge
    sets bounding the finite faces of the remaining plane graph; a region that
    is not a finite face of the original graph is listed in ``new_faces``.
    """

    removed: frozenset[int]
    components: tuple[PlaneBipartiteGraph, ...]
    finite_regions: tuple[frozenset[int], ...]
    new_faces: tuple[frozenset[int], ...]


def delete_edges(g: PlaneBipartiteGraph, removed: Iterable[int]) -> EdgeDeletion:
    """Delete edges, keeping the embedding of what remains.

    Faces of the remainder are unions of faces of ``g`` glued across deleted
    edges.  Components nested inside a face of another component get their
    own outer face determined from this nesting.
    """
    removed = frozenset(removed)
    nf = len(g.faces)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    inf = [f.id for f in g.infinite_faces]
    for f in inf[1:]:
        union(inf[0], f)
    for e in removed:
        a, b = g.faces_of_edge(e)
        union(a.id, b.id)
    inf_root = find(inf[0])

    region_faces: dict[int, list[int]] = {}
    for f in range(nf):
        region_faces.setdefault(find(f), []).append(f)
    finite_regions = []
    original = {f.edges for f in g.finite_faces}
    new = []
    for root in sorted(region_faces):
        if root == inf_root:
            continue
        es = frozenset().union(*(g.faces[f].edges for f in region_faces[root])) - removed
        finite_regions.append(es)
        if es not in original:
            new.append(es)

    kept = {e: p for e, p in g.edges.items() if e not in removed}
    rotation = {v: [e for e in g.incident(v) if e not in removed] for v in g.vertices}
    isolated = [v for v, r in rotation.items() if not r]
    if isolated:
        raise GraphError(f"deleting the edges isolates vertex {isolated[0]}")

    # trace the walks of the remainder and locate each in a region
    pos = {v: {e: i for i, e in enumerate(r)} for v, r in rotation.items()}
    seen: set[Dart] = set()
    walks = []
    for e in sorted(kept):
        for start in ((e, kept[e][0]), (e, kept[e][1])):
            if start in seen:
                continue
            walk, d = [], start
            while d not in seen:
                seen.add(d)
                walk.append(d)
                x, t = d
                h = kept[x][0] if kept[x][1] == t else kept[x][1]
                r = rotation[h]
                d = (r[(pos[h][x] + 1) % len(r)], h)
            walks.append(walk)

    comp_of = {}
    comps: list[set[int]] = []
    for v in sorted(g.vertices):
        if v in comp_of:
            continue
        idx = len(comps)
        comp = {v}
        queue = deque([v])
        comp_of[v] = idx
        while queue:
            x = queue.popleft()
            for e in rotation[x]:
                y = kept[e][0] if kept[e][1] == x else kept[e][1]
                if y not in comp_of:
                    comp_of[y] = idx
                    comp.add(y)
                    queue.append(y)
        comps.append(comp)

    walk_region = [find(g.face_of_dart(w[0]).id) for w in walks]
    walk_comp = [comp_of[w[0][1]] for w in walks]
    by_region: dict[int, list[int]] = {}
    for i, r in enumerate(walk_region):
        by_region.setdefault(r, []).append(i)

    outer_walk: dict[int, int] = {}
    queue = deque()
    for i in by_region.get(inf_root, []):
        outer_walk[walk_comp[i]] = i
        queue.append(walk_comp[i])
    while queue:
        c = queue.popleft()
        for i, wc in enumerate(walk_comp):
            if wc != c or i == outer_walk[c]:
                continue
            for j in by_region[walk_region[i]]:
                cj = walk_comp[j]
                if cj != c and cj not in outer_walk:
                    outer_walk[cj] = j
                    queue.append(cj)
    if len(outer_walk) != len(comps):
        raise GraphError("could not determine the nesting of the remaining components")

    components = []
    for idx, comp in enumerate(comps):
        cv = sorted(comp)
        components.append(
            PlaneBipartiteGraph(
                {v: g.color(v) for v in cv},
                {e: kept[e] for e in kept if comp_of[kept[e][0]] == idx},
                {v: rotation[v] for v in cv},
                [walks[outer_walk[idx]][0]],
            )
        )
    return EdgeDeletion(removed, tuple(components), tuple(finite_regions), tuple(new))
