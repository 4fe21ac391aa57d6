"""Resonance graphs: perfect matchings joined by single-face twists."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cube import SimpleGraph
from .errors import HostMismatch, NoPerfectMatching
from .matching import Matching, edges_of, enumerate_perfect_matchings, is_resonant
from .plane_graph import PlaneBipartiteGraph


@dataclass(frozen=True)
class ResonanceGraph:
    """R(G) with face-labelled edges.

    ``vertices[i]`` is a perfect matching of ``host``; ``edges`` holds triples
    ``(i, j, face_id)`` with ``i < j``, sorted.
    """

    vertices: tuple[Matching, ...]
    edges: tuple[tuple[int, int, int], ...]
    host: PlaneBipartiteGraph

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def index_of(self, m: Matching | int) -> int:
        bits = m.bits if isinstance(m, Matching) else m
        return self._index[bits]

    @property
    def _index(self) -> dict[int, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {m.bits: i for i, m in enumerate(self.vertices)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def face_labels(self) -> dict[tuple[int, int], int]:
        return {(i, j): s for i, j, s in self.edges}

    def to_simple(self) -> SimpleGraph:
        """Index-based graph whose edge labels are the face ids."""
        return SimpleGraph(
            len(self.vertices),
            [(i, j) for i, j, _ in self.edges],
            {(i, j): s for i, j, s in self.edges},
        )

    def is_connected(self) -> bool:
        return self.to_simple().is_connected


def build_resonance_graph(g: PlaneBipartiteGraph, limit: int | None = None) -> ResonanceGraph:
    """All perfect matchings, with an edge labelled s between m and m xor E(s)
    whenever finite face s is m-resonant."""
    ms = enumerate_perfect_matchings(g, limit)
    if not ms:
        raise NoPerfectMatching("graph has no perfect matching")
    index = {m.bits: i for i, m in enumerate(ms)}
    edges = set()
    faces = [f for f in g.finite_faces if f.alternating_masks is not None]
    for i, m in enumerate(ms):
        for f in faces:
            if is_resonant(f, m.bits):
                j = index[m.bits ^ f.edge_mask]
                edges.add((min(i, j), max(i, j), f.id))
    return ResonanceGraph(tuple(ms), tuple(sorted(edges)), g)


class DifferenceKind(str, enum.Enum):
    EMPTY = "Empty"
    SINGLE_FACE_PERIPHERY = "SingleFacePeriphery"
    SINGLE_OTHER_CYCLE = "SingleOtherCycle"
    MULTIPLE_CYCLES = "MultipleCycles"


@dataclass(frozen=True)
class SymmetricDifference:
    kind: DifferenceKind
    face: int | None = None
    cycles: tuple[frozenset[int], ...] = ()

    @property
    def is_resonance_edge(self) -> bool:
        return self.kind is DifferenceKind.SINGLE_FACE_PERIPHERY


def _cycles_of(g: PlaneBipartiteGraph, bits: int) -> list[frozenset[int]]:
    """Split an edge set in which every vertex has degree 0 or 2 into cycles."""
    es = set(edges_of(bits))
    at: dict[int, list[int]] = {}
    for e in es:
        for v in g.endpoints(e):
            at.setdefault(v, []).append(e)
    out = []
    while es:
        start = min(es)
        cycle = set()
        stack = [start]
        while stack:
            e = stack.pop()
            if e in cycle:
                continue
            cycle.add(e)
            for v in g.endpoints(e):
                stack.extend(x for x in at[v] if x not in cycle)
        es -= cycle
        out.append(frozenset(cycle))
    return out


def classify_symmetric_difference(
    g: PlaneBipartiteGraph, m1: Matching, m2: Matching
) -> SymmetricDifference:
    """Decide whether m1 xor m2 is empty, one face boundary, one other cycle,
    or several cycles."""
    for m in (m1, m2):
        if m.host is not g and m.host != g:
            raise HostMismatch("matching belongs to a different graph")
    diff = m1.bits ^ m2.bits
    if diff == 0:
        return SymmetricDifference(DifferenceKind.EMPTY)
    cycles = tuple(_cycles_of(g, diff))
    if len(cycles) > 1:
        return SymmetricDifference(DifferenceKind.MULTIPLE_CYCLES, cycles=cycles)
    for f in g.finite_faces:
        if f.is_cycle and f.edge_mask == diff:
            return SymmetricDifference(DifferenceKind.SINGLE_FACE_PERIPHERY, f.id, cycles)
    return SymmetricDifference(DifferenceKind.SINGLE_OTHER_CYCLE, cycles=cycles)


def resonance_by_pairs(g: PlaneBipartiteGraph, limit: int | None = None) -> ResonanceGraph:
    """R(G) by classifying every pair of matchings; quadratic, used as a check."""
    ms = enumerate_perfect_matchings(g, limit)
    if not ms:
        raise NoPerfectMatching("graph has no perfect matching")
    edges = []
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            d = classify_symmetric_difference(g, ms[i], ms[j])
            if d.is_resonance_edge:
                edges.append((i, j, d.face))
    return ResonanceGraph(tuple(ms), tuple(edges), g)
