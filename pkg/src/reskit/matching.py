"""Perfect matchings and the structure derived from them.

Matchings are stored as Python ints used as bitsets keyed by edge id.
"""

from __future__ import annotations

import itertools
import math
import os
import weakref
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, maximum_bipartite_matching

from .errors import LimitExceeded, NoPerfectMatching
from .plane_graph import Color, Face, PlaneBipartiteGraph, delete_edges

DEFAULT_LIMIT = 2**20


def default_limit() -> int:
    """Enumeration cap; the RESKIT_LIMIT environment variable overrides it."""
    env = os.environ.get("RESKIT_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


def bits_of(edges) -> int:
    out = 0
    for e in edges:
        out |= 1 << e
    return out


def edges_of(bits: int) -> tuple[int, ...]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return tuple(out)


@dataclass(frozen=True)
class Matching:
    """A perfect matching of ``host``; ``bits`` has bit e set for edge e."""

    bits: int
    host: PlaneBipartiteGraph = field(compare=False, repr=False, hash=False)

    @property
    def edges(self) -> tuple[int, ...]:
        return edges_of(self.bits)

    def __contains__(self, edge: int) -> bool:
        return bool(self.bits >> edge & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def sort_key(self) -> tuple[int, ...]:
        return self.edges


def is_perfect_matching(g: PlaneBipartiteGraph, bits: int) -> bool:
    covered = set()
    for e in edges_of(bits):
        if e not in g.edges:
            return False
        u, v = g.endpoints(e)
        if u in covered or v in covered:
            return False
        covered |= {u, v}
    return len(covered) == g.num_vertices


def _enumerate_component(g: PlaneBipartiteGraph, comp, limit: int) -> list[int]:
    verts = sorted(comp)
    idx = {v: i for i, v in enumerate(verts)}
    adj = [[(e, idx[g.other_end(e, v)]) for e in sorted(g.incident(v))] for v in verts]
    n = len(verts)
    full = (1 << n) - 1
    out: list[int] = []

    def extend(covered: int, bits: int) -> None:
        while True:
            if covered == full:
                out.append(bits)
                if len(out) > limit:
                    raise LimitExceeded(limit)
                return
            forced = None
            for i in range(n):
                if covered >> i & 1:
                    continue
                avail = [(e, j) for e, j in adj[i] if not covered >> j & 1]
                if not avail:
                    return
                if len(avail) == 1:
                    forced = (i, avail[0])
                    break
            if forced is None:
                break
            i, (e, j) = forced
            covered |= (1 << i) | (1 << j)
            bits |= 1 << e
        i = next(k for k in range(n) if not covered >> k & 1)
        for e, j in adj[i]:
            if not covered >> j & 1:
                extend(covered | (1 << i) | (1 << j), bits | (1 << e))

    if n % 2 == 0:
        extend(0, 0)
    return out


_cache: "weakref.WeakKeyDictionary[PlaneBipartiteGraph, tuple[int, ...]]" = weakref.WeakKeyDictionary()


def enumerate_perfect_matchings(g: PlaneBipartiteGraph, limit: int | None = None) -> list[Matching]:
    """All perfect matchings, lexicographically ordered by sorted edge ids.

    Backtracks on the lowest uncovered vertex; a vertex with a single
    available edge forces it.  Components are enumerated separately and
    combined by Cartesian product.
    """
    limit = default_limit() if limit is None else limit
    if limit <= 0:
        raise ValueError("limit must be positive")
    cached = _cache.get(g)
    if cached is None:
        per_comp = [_enumerate_component(g, c, limit) for c in g.components]
        total = math.prod(len(p) for p in per_comp)
        if total > limit:
            raise LimitExceeded(limit, f"{total} perfect matchings exceed the limit {limit}")
        combined = [sum(t) for t in itertools.product(*per_comp)] if total else []
        cached = tuple(sorted(combined, key=edges_of))
        _cache[g] = cached
    if len(cached) > limit:
        raise LimitExceeded(limit, f"{len(cached)} perfect matchings exceed the limit {limit}")
    return [Matching(b, g) for b in cached]


def count_perfect_matchings(g: PlaneBipartiteGraph, limit: int | None = None) -> int:
    return len(enumerate_perfect_matchings(g, limit))


def _some_perfect_matching(g: PlaneBipartiteGraph) -> int | None:
    blacks = [v for v in g.vertices if g.color(v) is Color.BLACK]
    whites = [v for v in g.vertices if g.color(v) is Color.WHITE]
    if len(blacks) != len(whites):
        return None
    bi = {v: i for i, v in enumerate(blacks)}
    wi = {v: i for i, v in enumerate(whites)}
    rows, cols = [], []
    for e, (u, v) in g.edges.items():
        b, w = (u, v) if g.color(u) is Color.BLACK else (v, u)
        rows.append(bi[b])
        cols.append(wi[w])
    a = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(blacks), len(whites)))
    match = maximum_bipartite_matching(a, perm_type="column")
    if (match < 0).any():
        return None
    bits = 0
    for b_idx, w_idx in enumerate(match):
        bits |= 1 << g.edge_between(blacks[b_idx], whites[w_idx])
    return bits


def has_perfect_matching(g: PlaneBipartiteGraph) -> bool:
    return _some_perfect_matching(g) is not None


def allowed_edges(g: PlaneBipartiteGraph, method: str = "enumerate", limit: int | None = None) -> frozenset[int]:
    """Edges lying in at least one perfect matching.

    ``method="enumerate"`` takes the union of all perfect matchings.
    ``method="alternating"`` starts from one perfect matching M and keeps an
    edge outside M exactly when it lies on an M-alternating cycle, i.e. when
    its ends share a strongly connected component of the digraph with non-M
    edges oriented black->white and M edges white->black.
    """
    if method == "enumerate":
        ms = enumerate_perfect_matchings(g, limit)
        if not ms:
            raise NoPerfectMatching("graph has no perfect matching")
        union = 0
        for m in ms:
            union |= m.bits
        return frozenset(edges_of(union))
    if method == "alternating":
        m = _some_perfect_matching(g)
        if m is None:
            raise NoPerfectMatching("graph has no perfect matching")
        index = {v: i for i, v in enumerate(g.vertices)}
        rows, cols = [], []
        for e, (u, v) in g.edges.items():
            b, w = (u, v) if g.color(u) is Color.BLACK else (v, u)
            if m >> e & 1:
                rows.append(index[w])
                cols.append(index[b])
            else:
                rows.append(index[b])
                cols.append(index[w])
        n = len(index)
        d = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        _, label = connected_components(d, directed=True, connection="strong")
        out = set()
        for e, (u, v) in g.edges.items():
            if m >> e & 1 or label[index[u]] == label[index[v]]:
                out.add(e)
        return frozenset(out)
    raise ValueError(f"unknown method {method!r}")


def forbidden_edges(g: PlaneBipartiteGraph, method: str = "enumerate") -> frozenset[int]:
    return frozenset(g.edge_ids) - allowed_edges(g, method)


@dataclass(frozen=True)
class ElementaryDecomposition:
    forbidden_edges: frozenset[int]
    components: tuple[PlaneBipartiteGraph, ...]
    weakly_elementary: bool
    new_faces: tuple[frozenset[int], ...]

    @property
    def k2_components(self) -> int:
        return sum(1 for c in self.components if c.is_k2)

    @property
    def nontrivial_components(self) -> tuple[PlaneBipartiteGraph, ...]:
        return tuple(c for c in self.components if not c.is_k2)


def elementary_decomposition(g: PlaneBipartiteGraph, method: str = "enumerate") -> ElementaryDecomposition:
    """Delete the forbidden edges and split into elementary components.

    ``method`` selects how forbidden edges are found (see allowed_edges).
    """
    forbidden = forbidden_edges(g, method)
    cut = delete_edges(g, forbidden)
    return ElementaryDecomposition(forbidden, cut.components, not cut.new_faces, cut.new_faces)


def is_weakly_elementary(g: PlaneBipartiteGraph, method: str = "enumerate") -> bool:
    return elementary_decomposition(g, method).weakly_elementary


def is_resonant(face: Face, bits: int) -> bool:
    masks = face.alternating_masks
    if masks is None:
        return False
    part = bits & face.edge_mask
    return part == masks[0] or part == masks[1]


def resonant_faces(g: PlaneBipartiteGraph, m: Matching | int) -> frozenset[int]:
    """Finite faces whose boundary is an M-alternating cycle."""
    bits = m.bits if isinstance(m, Matching) else m
    return frozenset(f.id for f in g.finite_faces if is_resonant(f, bits))


def elementary_characterizations(g: PlaneBipartiteGraph) -> dict[str, bool]:
    """Three independent tests of elementarity.

    ``all_allowed``: connected with no forbidden edge.  ``faces_resonant``:
    every face, the infinite one included, is resonant for some perfect
    matching.  ``single_component``: deleting forbidden edges leaves one
    component.  The face test only applies with more than two vertices.
    """
    ms = enumerate_perfect_matchings(g)
    if not ms:
        raise NoPerfectMatching("graph has no perfect matching")
    union = 0
    for m in ms:
        union |= m.bits
    all_allowed = g.is_connected and len(edges_of(union)) == g.num_edges
    out = {"all_allowed": all_allowed}
    if g.num_vertices > 2:
        out["faces_resonant"] = g.is_connected and all(
            any(is_resonant(f, m.bits) for m in ms) for f in g.faces
        )
        out["two_connected"] = g.is_two_connected
    out["single_component"] = len(elementary_decomposition(g).components) == 1
    return out


def is_elementary(g: PlaneBipartiteGraph, cross_check: bool = True) -> bool:
    """Connected and every edge allowed.

    With ``cross_check`` the face-resonance and 2-connectivity
    characterizations are evaluated too and must agree.
    """
    if not cross_check:
        if not has_perfect_matching(g):
            raise NoPerfectMatching("graph has no perfect matching")
        return g.is_connected and not forbidden_edges(g, method="alternating")
    checks = elementary_characterizations(g)
    value = checks["all_allowed"]
    if "faces_resonant" in checks:
        assert checks["faces_resonant"] == value, checks
        if value:
            assert checks["two_connected"], checks
    assert checks["single_component"] == value, checks
    return value


def fries_number(g: PlaneBipartiteGraph, limit: int | None = None) -> tuple[int, Matching]:
    """Largest number of finite faces resonant under one perfect matching.

    Returns the count and the first perfect matching attaining it.
    """
    ms = enumerate_perfect_matchings(g, limit)
    if not ms:
        raise NoPerfectMatching("graph has no perfect matching")
    best, witness = -1, ms[0]
    for m in ms:
        k = len(resonant_faces(g, m))
        if k > best:
            best, witness = k, m
    return best, witness


def fries_number_by_subsets(g: PlaneBipartiteGraph, limit: int | None = None) -> int:
    """Fries number from its subset definition, by brute force.

    Scans subsets of finite faces from largest to smallest and stops at the
    first one that some perfect matching makes simultaneously resonant.
    """
    ms = enumerate_perfect_matchings(g, limit)
    if not ms:
        raise NoPerfectMatching("graph has no perfect matching")
    fs = g.finite_faces
    for size in range(len(fs), -1, -1):
        for subset in itertools.combinations(fs, size):
            if any(all(is_resonant(f, m.bits) for f in subset) for m in ms):
                return size
    return 0
