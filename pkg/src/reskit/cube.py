"""Distances, the Djokovic-Winkler relation, partial cubes and daisy cubes.

Everything here works on :class:`SimpleGraph`, a small index-based undirected
graph with optional edge labels.  Binary codes are Python ints; bit ``i``
corresponds to Theta-class ``i`` and to position ``i`` (from the left) of the
printed 0/1 string.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .errors import Disconnected, NotBipartite, TooLarge

MEDIAN_BUDGET = 400
ISOMORPHISM_BUDGET = 5000
FAMILY_BUDGET = 20


class SimpleGraph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` are stored as sorted pairs ``(u, v)`` with ``u < v``; an edge's
    index is its position in that order.  ``labels`` (optional) maps edge
    pairs to arbitrary hashable labels.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: dict[tuple[int, int], Hashable] | None = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            es.add((min(u, v), max(u, v)))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(es))
        self.labels = None
        if labels is not None:
            self.labels = {(min(u, v), max(u, v)): lab for (u, v), lab in labels.items()}

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_index

    def label(self, u: int, v: int):
        if self.labels is None:
            return None
        return self.labels.get((min(u, v), max(u, v)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return connected_components(self.sparse(), directed=False)[0] == 1

    def num_components(self) -> int:
        if self.n == 0:
            return 0
        return int(connected_components(self.sparse(), directed=False)[0])

    def sparse(self) -> csr_matrix:
        if not self.edges:
            return csr_matrix((self.n, self.n))
        e = np.array(self.edges)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        return csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.n, self.n))

    def induced(self, vertices: Sequence[int]) -> "SimpleGraph":
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = None
        if self.labels is not None:
            labels = {(index[u], index[v]): lab for (u, v), lab in self.labels.items() if u in index and v in index}
        return SimpleGraph(len(vertices), es, labels)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        for u, v in self.edges:
            g.add_edge(u, v, label=self.label(u, v))
        return g

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, m={self.num_edges})"


# -- distances and Theta ------------------------------------------------------


def all_pairs_distances(g: SimpleGraph) -> np.ndarray:
    """BFS distance table as an int matrix.  Raises Disconnected."""
    if g.n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    d = shortest_path(g.sparse(), method="D", directed=False, unweighted=True)
    if np.isinf(d).any():
        raise Disconnected("graph is not connected")
    return d.astype(np.int64)


def _distances_or_minus_one(g: SimpleGraph) -> np.ndarray:
    if g.n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    d = shortest_path(g.sparse(), method="D", directed=False, unweighted=True)
    d[np.isinf(d)] = -1
    return d.astype(np.int64)


def _bipartition(g: SimpleGraph) -> list[int]:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if side[y] < 0:
                    side[y] = 1 - side[x]
                    queue.append(y)
                elif side[y] == side[x]:
                    raise NotBipartite(f"edge ({x}, {y}) closes an odd cycle")
    return side


def theta_related(dist: np.ndarray, e: tuple[int, int], f: tuple[int, int]) -> bool:
    """Djokovic-Winkler relation straight from the four-distance formula."""
    u, v = e
    x, y = f
    return dist[u, x] + dist[v, y] != dist[u, y] + dist[v, x]


def theta_partition(g: SimpleGraph, dist: np.ndarray | None = None) -> list[list[int]]:
    """Classes of the transitive closure of Theta, as lists of edge indices.

    On a bipartite graph ``d(u,w) - d(v,w)`` is +1 or -1 for every edge uv, and
    uv Theta xy holds exactly when this sign differs between x and y.  The
    signs are compared for all edge pairs at once.  Classes are ordered by
    their smallest edge index.
    """
    if not g.is_connected:
        raise Disconnected("Theta classes need a connected graph")
    _bipartition(g)
    if dist is None:
        dist = all_pairs_distances(g)
    m = g.num_edges
    if m == 0:
        return []
    e = np.array(g.edges)
    # sign[i, w] = d(u_i, w) - d(v_i, w)
    sign = dist[e[:, 0]] - dist[e[:, 1]]
    label = np.arange(m)
    for i in range(m):
        related = sign[i, e[:, 0]] != sign[i, e[:, 1]]
        roots = np.unique(label[related])
        if len(roots) > 1 or (len(roots) == 1 and roots[0] != label[i]):
            roots = np.union1d(roots, [label[i]])
            label[np.isin(label, roots)] = roots.min()
    classes: dict[int, list[int]] = {}
    for i, lab in enumerate(label):
        classes.setdefault(int(lab), []).append(i)
    return sorted(classes.values(), key=lambda c: c[0])


# -- partial cubes ------------------------------------------------------------


def code_string(code: int, width: int) -> str:
    return "".join("1" if code >> i & 1 else "0" for i in range(width))


@dataclass(frozen=True)
class CubeEmbedding:
    """Isometric embedding into a hypercube.

    ``coords[v]`` is an int whose bit i says on which side of Theta-class i
    vertex v lies; the base vertex has all-zero coordinates.
    """

    theta_classes: tuple[tuple[int, ...], ...]
    coords: tuple[int, ...]
    base_vertex: int

    @property
    def idim(self) -> int:
        return len(self.theta_classes)

    def code(self, v: int) -> str:
        return code_string(self.coords[v], self.idim)

    def class_of_edge(self) -> dict[int, int]:
        return {e: c for c, cls in enumerate(self.theta_classes) for e in cls}

    def reoriented(self, base: int) -> "CubeEmbedding":
        shift = self.coords[base]
        return CubeEmbedding(self.theta_classes, tuple(c ^ shift for c in self.coords), base)


def _hamming_matrix(coords: Sequence[int], width: int) -> np.ndarray:
    bits = np.array([[c >> i & 1 for i in range(width)] for c in coords], dtype=np.int64).reshape(len(coords), width)
    return bits @ (1 - bits).T + (1 - bits) @ bits.T


def is_partial_cube(g: SimpleGraph, base: int = 0) -> CubeEmbedding | None:
    """Hypercube embedding built from Theta classes, or None.

    Coordinates are propagated along a BFS tree from ``base``; the result is
    kept only if every edge flips exactly the bit of its class and Hamming
    distance equals graph distance for every pair.
    """
    if g.n == 0 or not g.is_connected:
        return None
    try:
        classes = theta_partition(g)
    except NotBipartite:
        return None
    dist = all_pairs_distances(g)
    cls_of = {}
    for c, members in enumerate(classes):
        for i in members:
            cls_of[g.edges[i]] = c
    coords = [-1] * g.n
    coords[base] = 0
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if coords[y] < 0:
                coords[y] = coords[x] ^ (1 << cls_of[(min(x, y), max(x, y))])
                queue.append(y)
    for (u, v), c in cls_of.items():
        if coords[u] ^ coords[v] != 1 << c:
            return None
    if not np.array_equal(_hamming_matrix(coords, len(classes)), dist):
        return None
    return CubeEmbedding(tuple(tuple(c) for c in classes), tuple(coords), base)


def is_median_graph(g: SimpleGraph, budget: int = MEDIAN_BUDGET) -> bool:
    """Every vertex triple has exactly one median (interval brute force)."""
    if g.n > budget:
        raise TooLarge(f"{g.n} vertices exceed the median-test budget {budget}")
    if g.n == 0 or not g.is_connected:
        return False
    d = all_pairs_distances(g)
    # interval[a, b, x]: x lies on a shortest a-b path
    interval = d[:, None, :] + d[None, :, :] == d[:, :, None]
    for u in range(g.n):
        iu = interval[u]
        for v in range(u + 1, g.n):
            counts = (iu & interval[v] & iu[v]).sum(axis=1)
            if (counts[v + 1 :] != 1).any():
                return False
    return True


# -- daisy cubes --------------------------------------------------------------


@dataclass(frozen=True)
class DaisyCertificate:
    embedding: CubeEmbedding
    maximal_vertices: tuple[int, ...]

    @property
    def idim(self) -> int:
        return self.embedding.idim

    @property
    def base_vertex(self) -> int:
        return self.embedding.base_vertex

    @property
    def maximal_codes(self) -> tuple[str, ...]:
        return tuple(code_string(x, self.idim) for x in self.maximal_vertices)

    def to_json(self) -> dict:
        e = self.embedding
        return {
            "idim": self.idim,
            "base_vertex": e.base_vertex,
            "coords": [e.code(v) for v in range(len(e.coords))],
            "maximal_vertices": list(self.maximal_codes),
            "theta_classes": [list(c) for c in e.theta_classes],
        }


def _downward_closed(codes: set[int], width: int) -> int | None:
    """First code with a cleared bit outside the set, or None if closed."""
    for c in sorted(codes):
        for i in range(width):
            if c >> i & 1 and c ^ (1 << i) not in codes:
                return c
    return None


def recognize_daisy(g: SimpleGraph, all_bases: bool = False) -> tuple[DaisyCertificate | None, str]:
    """Daisy-cube recognition with a human-readable reason on failure.

    Only vertices whose degree equals the isometric dimension are tried as
    base unless ``all_bases`` is set.
    """
    if g.n == 0:
        return None, "empty graph"
    if not g.is_connected:
        return None, "graph is disconnected"
    emb = is_partial_cube(g)
    if emb is None:
        return None, "not a partial cube"
    n = emb.idim
    bases = range(g.n) if all_bases else [v for v in range(g.n) if g.degree(v) == n]
    if not bases:
        # no base can work; name a concrete closure failure for the report
        bad = _downward_closed(set(emb.coords), n)
        example = f"; e.g. from vertex 0, code {code_string(bad, n)} has a predecessor outside the graph" if bad is not None else ""
        return None, f"down-set closure fails: no vertex has degree equal to idim {n}{example}"
    last = ""
    for b in bases:
        cand = emb.reoriented(b)
        codes = set(cand.coords)
        bad = _downward_closed(codes, n)
        if bad is not None:
            if not last:
                last = (
                    f"down-set closure fails for every candidate base; e.g. base {b}: "
                    f"code {code_string(bad, n)} has a predecessor outside the graph"
                )
            continue
        maximal = sorted(
            {
                cand.coords[v]
                for v in range(g.n)
                if not any(cand.coords[w] & ~cand.coords[v] for w in g.adjacency[v])
            }
        )
        return DaisyCertificate(cand, tuple(maximal)), ""
    return None, last


def is_daisy_cube(g: SimpleGraph, all_bases: bool = False) -> DaisyCertificate | None:
    return recognize_daisy(g, all_bases)[0]


def daisy_from_codes(maximal: Iterable[str]) -> SimpleGraph:
    """The daisy cube generated by the given binary strings."""
    maximal = list(maximal)
    width = len(maximal[0]) if maximal else 0
    tops = [sum(1 << i for i, ch in enumerate(x) if ch == "1") for x in maximal]
    codes = sorted({c for t in tops for c in range(1 << width) if c & ~t == 0})
    return _cube_induced(codes, width)


def _cube_induced(codes: Sequence[int], width: int) -> SimpleGraph:
    index = {c: i for i, c in enumerate(codes)}
    edges = []
    for c in codes:
        for i in range(width):
            d = c ^ (1 << i)
            if d in index and c < d:
                edges.append((index[c], index[d]))
    return SimpleGraph(len(codes), edges)


# -- products, families, isomorphism -------------------------------------------


def cartesian_product(g: SimpleGraph, h: SimpleGraph) -> SimpleGraph:
    """Vertex (i, j) gets index ``i * h.n + j``; labels are kept per layer."""
    edges = []
    labels = {}
    for i in range(g.n):
        for a, b in h.edges:
            e = (i * h.n + a, i * h.n + b)
            edges.append(e)
            labels[e] = h.label(a, b)
    for j in range(h.n):
        for a, b in g.edges:
            e = (a * h.n + j, b * h.n + j)
            edges.append(e)
            labels[e] = g.label(a, b)
    has_labels = g.labels is not None or h.labels is not None
    return SimpleGraph(g.n * h.n, edges, labels if has_labels else None)


def product_of(graphs: Sequence[SimpleGraph]) -> SimpleGraph:
    out = SimpleGraph(1, [])
    for g in graphs:
        out = cartesian_product(out, g)
    return out


def hypercube(n: int) -> SimpleGraph:
    if n < 0:
        raise ValueError("dimension must be non-negative")
    if n > FAMILY_BUDGET:
        raise TooLarge(f"Q_{n} is too large")
    return _cube_induced(range(1 << n), n)


def fibonacci_cube(n: int) -> SimpleGraph:
    """Induced subgraph of Q_n on codes without two consecutive 1s."""
    if n < 1:
        raise ValueError("Fibonacci cubes start at n = 1")
    if n > FAMILY_BUDGET:
        raise TooLarge(f"Fibonacci cube {n} is too large")
    return _cube_induced([c for c in range(1 << n) if c & (c >> 1) == 0], n)


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> SimpleGraph:
    return SimpleGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _invariants(g: SimpleGraph, dist: np.ndarray) -> list[tuple]:
    out = []
    for v in range(g.n):
        row = dist[v]
        hist = tuple(np.bincount(row[row >= 0]).tolist())
        out.append((g.degree(v), hist, int((row < 0).sum())))
    return out


def is_isomorphic(g: SimpleGraph, h: SimpleGraph, respect_labels: bool = False) -> dict[int, int] | None:
    """A vertex bijection g -> h preserving adjacency, or None.

    Backtracking over a BFS order of g, pruned by degree and distance profile
    and by requiring distances to already-mapped vertices to match.  With
    ``respect_labels`` edge labels must correspond under one consistent
    bijection of label values.
    """
    if max(g.n, h.n) > ISOMORPHISM_BUDGET:
        raise TooLarge(f"isomorphism search limited to {ISOMORPHISM_BUDGET} vertices")
    if g.n != h.n or g.num_edges != h.num_edges:
        return None
    if g.n == 0:
        return {}
    dg, dh = _distances_or_minus_one(g), _distances_or_minus_one(h)
    ig, ih = _invariants(g, dg), _invariants(h, dh)
    if sorted(ig) != sorted(ih):
        return None
    by_inv: dict[tuple, list[int]] = {}
    for v, inv in enumerate(ih):
        by_inv.setdefault(inv, []).append(v)

    # visit order: BFS per component, starting from the rarest invariant
    rarity = {inv: len(vs) for inv, vs in by_inv.items()}
    order, parent = [], {}
    placed = set()
    for s in sorted(range(g.n), key=lambda v: (rarity[ig[v]], v)):
        if s in placed:
            continue
        placed.add(s)
        parent[s] = None
        queue = deque([s])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in g.adjacency[x]:
                if y not in placed:
                    placed.add(y)
                    parent[y] = x
                    queue.append(y)

    fwd: dict[int, int] = {}
    used = np.zeros(h.n, dtype=bool)
    lab_f: dict = {}
    lab_b: dict = {}
    mapped_g: list[int] = []
    mapped_h: list[int] = []

    def candidates(u: int) -> list[int]:
        p = parent[u]
        pool = h.adjacency[fwd[p]] if p is not None else by_inv[ig[u]]
        out = []
        for c in pool:
            if used[c] or ih[c] != ig[u]:
                continue
            if mapped_g and not np.array_equal(dg[u, mapped_g], dh[c, mapped_h]):
                continue
            out.append(c)
        return out

    def bind_labels(u: int, c: int) -> list | None:
        added = []
        for w in g.adjacency[u]:
            if w not in fwd:
                continue
            a, b = g.label(u, w), h.label(c, fwd[w])
            fa, bb = lab_f.get(a), lab_b.get(b)
            if fa is None and bb is None:
                lab_f[a], lab_b[b] = b, a
                added.append((a, b))
            elif fa != b or bb != a:
                for x, y in added:
                    del lab_f[x], lab_b[y]
                return None
        return added

    stack = [iter(candidates(order[0]))]
    trail: list[list] = []
    while stack:
        depth = len(stack) - 1
        u = order[depth]
        advanced = False
        for c in stack[-1]:
            added = bind_labels(u, c) if respect_labels else []
            if added is None:
                continue
            fwd[u] = c
            used[c] = True
            mapped_g.append(u)
            mapped_h.append(c)
            trail.append(added)
            if len(fwd) == g.n:
                return dict(sorted(fwd.items()))
            stack.append(iter(candidates(order[depth + 1])))
            advanced = True
            break
        if advanced:
            continue
        stack.pop()
        if not trail:
            break
        prev = order[len(stack) - 1]
        for x, y in trail.pop():
            del lab_f[x], lab_b[y]
        used[fwd.pop(prev)] = False
        mapped_g.pop()
        mapped_h.pop()
    return None


def is_isomorphism(g: SimpleGraph, h: SimpleGraph, f: dict[int, int]) -> bool:
    """Check that ``f`` is an adjacency-preserving bijection."""
    if sorted(f) != list(range(g.n)) or sorted(f.values()) != list(range(h.n)):
        return False
    return g.num_edges == h.num_edges and all(h.has_edge(f[u], f[v]) for u, v in g.edges)


def layer_of(product_index: int, n_right: int) -> tuple[int, int]:
    return divmod(product_index, n_right)


def product_layers(g: SimpleGraph, h: SimpleGraph) -> list[str]:
    """For each edge of ``g x h``: 'G' for a G-layer edge, 'H' for an H-layer edge."""
    p = cartesian_product(g, h)
    out = []
    for u, v in p.edges:
        (a, b), (c, d) = divmod(u, h.n), divmod(v, h.n)
        out.append("H" if a == c else "G")
    return out


def squares(g: SimpleGraph) -> list[tuple[int, int, int, int]]:
    """All 4-cycles (a, b, c, d) listed once, with a the smallest vertex."""
    out = set()
    adj = [set(a) for a in g.adjacency]
    for a in range(g.n):
        for b, d in itertools.combinations(sorted(adj[a]), 2):
            for c in adj[b] & adj[d]:
                if c != a and c > a and b > a and d > a:
                    out.add((a, b, c, d))
    return sorted(out)
