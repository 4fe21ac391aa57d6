"""Constructors for benzenoid chains, fixed test graphs and small searches.

Hexagonal cells use axial coordinates ``(q, r)`` with pointy-top hexagons:
the centre of cell (q, r) is ``(sqrt(3) * (q + r / 2), 1.5 * r)`` and its
corners sit at angles ``30 + 60 k`` degrees.  Rotation systems are derived
from the straight-line drawing, so "clockwise" has its geometric meaning.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import networkx as nx

from .errors import NotBipartite, NotFound, SelfOverlap
from .plane_graph import Color, PlaneBipartiteGraph

SQRT3 = math.sqrt(3.0)
# neighbouring cells in counterclockwise order, starting east
DIRS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))
MAX_CHAIN = 8
MAX_SEARCH = 14


def embed_straight_line(
    positions: Mapping[int, tuple[float, float]],
    edges: Mapping[int, tuple[int, int]],
    colors: Mapping[int, Color] | None = None,
) -> PlaneBipartiteGraph:
    """Plane graph from a crossing-free straight-line drawing.

    Rotations list incident edges by decreasing angle.  Colors default to a
    BFS 2-coloring with the smallest vertex of each component black.  The
    outer face of each component is its face of least signed area.
    """
    inc: dict[int, list[int]] = {v: [] for v in positions}
    for e, (u, v) in edges.items():
        inc[u].append(e)
        inc[v].append(e)

    def other(e, v):
        a, b = edges[e]
        return b if a == v else a

    def angle(v, e):
        x0, y0 = positions[v]
        x1, y1 = positions[other(e, v)]
        return math.atan2(y1 - y0, x1 - x0)

    rotation = {v: sorted(es, key=lambda e: -angle(v, e)) for v, es in inc.items()}

    if colors is None:
        colors = {}
        for s in sorted(positions):
            if s in colors:
                continue
            colors[s] = Color.BLACK
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for e in inc[x]:
                    y = other(e, x)
                    if y not in colors:
                        colors[y] = colors[x].other
                        queue.append(y)
                    elif colors[y] is colors[x]:
                        raise NotBipartite(f"edge {e} joins two vertices of one color")

    pos = {v: {e: i for i, e in enumerate(r)} for v, r in rotation.items()}
    seen = set()
    best: dict[int, tuple[float, tuple[int, int]]] = {}
    comp = _components(positions, edges)
    for e in sorted(edges):
        for start in ((e, edges[e][0]), (e, edges[e][1])):
            if start in seen:
                continue
            d, area, walk = start, 0.0, []
            while d not in seen:
                seen.add(d)
                walk.append(d)
                x, t = d
                h = other(x, t)
                (x0, y0), (x1, y1) = positions[t], positions[h]
                area += x0 * y1 - x1 * y0
                r = rotation[h]
                d = (r[(pos[h][x] + 1) % len(r)], h)
            c = comp[start[1]]
            if c not in best or area < best[c][0]:
                best[c] = (area, min(walk))
    hints = [best[c][1] for c in sorted(best)]
    return PlaneBipartiteGraph(colors, edges, rotation, hints)


def _components(positions, edges) -> dict[int, int]:
    g = nx.Graph()
    g.add_nodes_from(positions)
    g.add_edges_from(edges.values())
    out = {}
    for i, c in enumerate(sorted(nx.connected_components(g), key=min)):
        for v in c:
            out[v] = i
    return out


def _from_points(points: Iterable[tuple[float, float]], segments: Iterable[tuple]) -> PlaneBipartiteGraph:
    """Number vertices by sorted rounded coordinates and edges by sorted ends."""
    key = lambda p: (round(p[0], 6), round(p[1], 6))  # noqa: E731
    uniq = sorted({key(p) for p in points})
    vid = {p: i for i, p in enumerate(uniq)}
    pairs = sorted({tuple(sorted((vid[key(a)], vid[key(b)]))) for a, b in segments})
    return embed_straight_line(dict(enumerate(uniq)), dict(enumerate(pairs)))


# -- hexagonal lattice -------------------------------------------------------


def hex_corners(cell: tuple[int, int]) -> list[tuple[float, float]]:
    q, r = cell
    cx, cy = SQRT3 * (q + r / 2), 1.5 * r
    return [
        (cx + math.cos(math.radians(30 + 60 * k)), cy + math.sin(math.radians(30 + 60 * k)))
        for k in range(6)
    ]


def _hex_segments(cells: Sequence[tuple[int, int]]):
    points, segments = [], []
    for c in cells:
        cs = hex_corners(c)
        points.extend(cs)
        segments.extend((cs[k], cs[(k + 1) % 6]) for k in range(6))
    return points, segments


def polyhex(cells: Sequence[tuple[int, int]], extra: Iterable[tuple] = ()) -> PlaneBipartiteGraph:
    """Union of unit hexagons, plus optional extra straight segments."""
    points, segments = _hex_segments(cells)
    extra = list(extra)
    for a, b in extra:
        points.extend((a, b))
    return _from_points(points, segments + extra)


def chain_cells(code: str) -> list[tuple[int, int]]:
    """Cells of the chain described by a turn code over {L, R, S}.

    Raises SelfOverlap if a cell repeats or two non-consecutive cells share
    an edge.
    """
    if any(ch not in "LRS" for ch in code):
        raise ValueError(f"chain code {code!r} may only contain L, R and S")
    cells = [(0, 0), (1, 0)]
    d = 0
    for ch in code:
        d = (d + {"L": 1, "R": -1, "S": 0}[ch]) % 6
        q, r = cells[-1]
        cells.append((q + DIRS[d][0], r + DIRS[d][1]))
    for i, a in enumerate(cells):
        for j in range(i + 2, len(cells)):
            b = cells[j]
            if a == b or (b[0] - a[0], b[1] - a[1]) in DIRS:
                raise SelfOverlap(f"chain code {code!r} folds back onto cell {b}")
    return cells


def benzenoid_chain(code: str) -> PlaneBipartiteGraph:
    """Catacondensed chain of ``len(code) + 2`` hexagons."""
    return polyhex(chain_cells(code))


def hexagon() -> PlaneBipartiteGraph:
    return polyhex([(0, 0)])


def fibonaccene(n: int) -> PlaneBipartiteGraph:
    """Zigzag chain of n hexagons (turns alternate L, R, L, ...)."""
    if n < 1:
        raise ValueError("need at least one hexagon")
    if n == 1:
        return hexagon()
    return benzenoid_chain(fibonaccene_code(n))


def fibonaccene_code(n: int) -> str:
    return "".join("LR"[i % 2] for i in range(max(n - 2, 0)))


def polyacene(n: int) -> PlaneBipartiteGraph:
    """Linear chain of n hexagons."""
    if n < 1:
        raise ValueError("need at least one hexagon")
    if n == 1:
        return hexagon()
    return benzenoid_chain("S" * (n - 2))


def naphthalene() -> PlaneBipartiteGraph:
    return polyacene(2)


def anthracene() -> PlaneBipartiteGraph:
    return polyacene(3)


def phenanthrene() -> PlaneBipartiteGraph:
    return benzenoid_chain("L")


def canonical_code(code: str) -> str:
    """Smallest code among mirror images and reversals."""
    swap = code.translate(str.maketrans("LR", "RL"))
    return min(code, swap, code[::-1], swap[::-1])


def chain_codes(max_h: int, min_h: int = 2) -> list[str]:
    """Canonical self-avoiding chain codes for ``min_h..max_h`` hexagons."""
    if max_h > MAX_CHAIN:
        raise ValueError(f"chains are limited to {MAX_CHAIN} hexagons")
    out = []
    for h in range(max(min_h, 2), max_h + 1):
        seen = set()
        for t in itertools.product("LRS", repeat=h - 2):
            code = "".join(t)
            c = canonical_code(code)
            if c in seen or c != code:
                continue
            try:
                chain_cells(code)
            except SelfOverlap:
                continue
            seen.add(c)
            out.append(code)
    return out


def enumerate_chains(max_h: int, min_h: int = 2) -> Iterator[PlaneBipartiteGraph]:
    """All catacondensed chains with 2..max_h hexagons, up to symmetry."""
    for code in chain_codes(max_h, min_h):
        yield benzenoid_chain(code)


# -- fixed instances ---------------------------------------------------------


def even_cycle(k: int) -> PlaneBipartiteGraph:
    """The cycle of length 2k drawn as a regular polygon."""
    if k < 2:
        raise ValueError("even_cycle needs k >= 2")
    n = 2 * k
    pts = {i: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)}
    return embed_straight_line(pts, {i: (min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)})


def bridged_hexagons() -> PlaneBipartiteGraph:
    """Two hexagons joined by a single (necessarily forbidden) edge."""
    a, b = hex_corners((0, 0)), hex_corners((2, 0))
    return polyhex([(0, 0), (2, 0)], extra=[(a[0], b[2])])


def coronene_like() -> PlaneBipartiteGraph:
    """A hexagon surrounded by a full ring of six hexagons."""
    return polyhex([(0, 0)] + [d for d in DIRS])


def two_component_graph() -> PlaneBipartiteGraph:
    """Angular three-hexagon chain joined to a naphthalene by two connectors.

    The connectors leave same-colored corners of the chain, so no perfect
    matching uses them; the elementary components are the two chains.
    """
    left = [(0, 0), (1, 0), (1, 1)]
    right = [(5, 0), (6, 0)]
    a, b = hex_corners((1, 1)), hex_corners((5, 0))
    return polyhex(left + right, extra=[(a[1], b[2]), (a[5], b[4])])


def anthracene_bridged_hexagon() -> PlaneBipartiteGraph:
    """Anthracene with a hexagon attached by a bridge."""
    a, b = hex_corners((2, 0)), hex_corners((4, 0))
    return polyhex([(0, 0), (1, 0), (2, 0), (4, 0)], extra=[(a[0], b[2])])


def handle_ring(cycle_len: int, chords: Sequence[tuple[int, int, int]]) -> PlaneBipartiteGraph:
    """An even polygon with internal paths ("chords") between its corners.

    Each chord ``(i, j, length)`` is a path of ``length`` edges drawn inside
    the polygon.  Chords between adjacent corners are bent toward the centre.
    """
    n = cycle_len
    if n < 4 or n % 2:
        raise ValueError("cycle length must be even and at least 4")
    pts = {i: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)}
    edges = [(i, (i + 1) % n) for i in range(n)]
    nxt = n
    for i, j, length in chords:
        if length < 1:
            raise ValueError("chord length must be positive")
        adjacent = (j - i) % n in (1, n - 1)
        if adjacent and length == 1:
            raise ValueError(f"chord {i}-{j} duplicates a polygon edge")
        prev = i
        for s in range(1, length):
            t = s / length
            x = (1 - t) * pts[i][0] + t * pts[j][0]
            y = (1 - t) * pts[i][1] + t * pts[j][1]
            if adjacent:
                x, y = 0.5 * x, 0.5 * y
            pts[nxt] = (x, y)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, j))
    return embed_straight_line(pts, {k: (min(e), max(e)) for k, e in enumerate(edges)})


# -- exhaustive search ---------------------------------------------------------


def _trace_faces(n: int, edges: Sequence[tuple[int, int]], rotation: Sequence[Sequence[int]]):
    pos = [{e: i for i, e in enumerate(r)} for r in rotation]
    seen = set()
    faces = []
    for e in range(len(edges)):
        for t in edges[e]:
            if (e, t) in seen:
                continue
            walk, d = [], (e, t)
            while d not in seen:
                seen.add(d)
                walk.append(d)
                x, tail = d
                a, b = edges[x]
                h = b if a == tail else a
                r = rotation[h]
                d = (r[(pos[h][x] + 1) % len(r)], h)
            faces.append(walk)
    return faces


def _perfect_matchings(n: int, edges: Sequence[tuple[int, int]]) -> list[int]:
    adj = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((i, v))
        adj[v].append((i, u))
    out = []

    def rec(covered: int, bits: int):
        if covered == (1 << n) - 1:
            out.append(bits)
            return
        u = next(k for k in range(n) if not covered >> k & 1)
        for i, v in adj[u]:
            if not covered >> v & 1:
                rec(covered | 1 << u | 1 << v, bits | 1 << i)

    rec(0, 0)
    return out


def _rotation_systems(n: int, edges: Sequence[tuple[int, int]]):
    inc = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        inc[u].append(i)
        inc[v].append(i)
    choices = [[(es[0],) + p for p in itertools.permutations(es[1:])] for es in inc]
    return itertools.product(*choices)


def _new_face_outer(faces, forbidden: set[int]) -> int | None:
    """Index of a face which, taken as outer face, makes deletion of the
    forbidden edges create a new finite face; None if there is none."""
    face_of = {}
    for i, f in enumerate(faces):
        for d in f:
            face_of[d] = i
    face_edges = [frozenset(e for e, _ in f) for f in faces]
    for outer in range(len(faces)):
        parent = list(range(len(faces)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for e in forbidden:
            ends = [face_of[d] for d in face_of if d[0] == e]
            a, b = find(ends[0]), find(ends[-1])
            parent[max(a, b)] = min(a, b)
        regions: dict[int, set[int]] = {}
        for i in range(len(faces)):
            regions.setdefault(find(i), set()).add(i)
        originals = {face_edges[i] for i in range(len(faces)) if i != outer}
        for root, members in regions.items():
            if find(outer) == root:
                continue
            es = frozenset().union(*(face_edges[i] for i in members)) - forbidden
            if es not in originals:
                return outer
    return None


@lru_cache(maxsize=None)
def search_non_weakly_elementary(max_vertices: int = MAX_SEARCH) -> PlaneBipartiteGraph:
    """First plane bipartite graph (in search order) that is not weakly
    elementary.

    Graphs are enumerated on color classes ``{0..k-1}`` and ``{k..2k-1}`` for
    increasing k, then by edge count and edge subset.  Candidates must be
    2-connected, planar, have a perfect matching and a forbidden edge.  Every
    planar rotation system and every choice of outer face is then tried.
    Raises NotFound when nothing exists up to ``max_vertices`` vertices.
    """
    if max_vertices > MAX_SEARCH:
        raise ValueError(f"search is limited to {MAX_SEARCH} vertices")
    for n in range(2, max_vertices + 1, 2):
        k = n // 2
        pairs = [(a, k + b) for a in range(k) for b in range(k)]
        for m in range(n, len(pairs) + 1):
            for subset in itertools.combinations(pairs, m):
                found = _try_candidate(n, subset)
                if found is not None:
                    return found
    raise NotFound(f"every plane bipartite graph with at most {max_vertices} vertices is weakly elementary")


def _try_candidate(n: int, edges: Sequence[tuple[int, int]]) -> PlaneBipartiteGraph | None:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    if min(deg) < 2:
        return None
    pms = _perfect_matchings(n, edges)
    if not pms:
        return None
    union = 0
    for b in pms:
        union |= b
    forbidden = {i for i in range(len(edges)) if not union >> i & 1}
    if not forbidden:
        return None
    g = nx.Graph(list(edges))
    if g.number_of_nodes() != n or not nx.is_biconnected(g) or not nx.check_planarity(g)[0]:
        return None
    for rot in _rotation_systems(n, edges):
        faces = _trace_faces(n, edges, rot)
        if n - len(edges) + len(faces) != 2:
            continue
        outer = _new_face_outer(faces, forbidden)
        if outer is not None:
            k = n // 2
            colors = {v: Color.BLACK if v < k else Color.WHITE for v in range(n)}
            return PlaneBipartiteGraph(
                colors, dict(enumerate(edges)), dict(enumerate(rot)), faces[outer][0]
            )
    return None


# -- registry used by the CLI and corpus builders --------------------------------


def generate(family: str, params: Sequence[str] = ()) -> PlaneBipartiteGraph:
    """Build a graph of a named family from string parameters."""
    p = list(params)

    def num(i: int = 0) -> int:
        if len(p) <= i:
            raise ValueError(f"family {family!r} needs a numeric parameter")
        return int(p[i])

    if family == "cycle":
        return even_cycle(num())
    if family == "chain":
        return benzenoid_chain(p[0] if p else "")
    if family == "fibonaccene":
        return fibonaccene(num())
    if family == "polyacene":
        return polyacene(num())
    if family == "bridged":
        return bridged_hexagons()
    if family == "coronene":
        return coronene_like()
    if family == "two-component":
        return two_component_graph()
    if family == "anthracene-bridged":
        return anthracene_bridged_hexagon()
    if family == "handle-ring":
        chords = [tuple(int(x) for x in c.split(",")) for c in p[1:]]
        return handle_ring(num(), chords)
    if family == "search":
        return search_non_weakly_elementary(num() if p else MAX_SEARCH)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


FAMILIES = (
    "cycle",
    "chain",
    "fibonaccene",
    "polyacene",
    "bridged",
    "coronene",
    "two-component",
    "anthracene-bridged",
    "handle-ring",
    "search",
)
