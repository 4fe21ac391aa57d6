import itertools

import networkx as nx
import pytest

from reskit import generators
from reskit.plane_graph import PlaneBipartiteGraph, from_spec
from reskit.theorems import k2


def cycle_spec(n, hint=None):
    """Graph-file mapping for the cycle 0-1-...-(n-1)-0; edge i joins i and i+1."""
    spec = {
        "vertices": [{"id": i, "color": "black" if i % 2 == 0 else "white"} for i in range(n)],
        "edges": [{"id": i, "u": i, "v": (i + 1) % n} for i in range(n)],
        "rotations": {str(i): [(i - 1) % n, i] for i in range(n)},
    }
    if hint is not None:
        spec["outer_face"] = hint
    return spec


def brute_force_matchings(g: PlaneBipartiteGraph) -> list[frozenset]:
    """Every edge subset of size |V|/2 covering all vertices."""
    if g.num_vertices % 2:
        return []
    out = []
    for subset in itertools.combinations(sorted(g.edge_ids), g.num_vertices // 2):
        covered = [v for e in subset for v in g.endpoints(e)]
        if len(set(covered)) == g.num_vertices:
            out.append(frozenset(subset))
    return out


def permanent_count(g: PlaneBipartiteGraph) -> int:
    """Number of perfect matchings as the permanent of the biadjacency
    matrix (Ryser's inclusion-exclusion formula)."""
    blacks = sorted(v for v in g.vertices if g.color(v).value == "black")
    whites = sorted(v for v in g.vertices if g.color(v).value == "white")
    if len(blacks) != len(whites):
        return 0
    n = len(blacks)
    a = [[1 if g.edge_between(b, w) is not None else 0 for w in whites] for b in blacks]
    total = 0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = 1
        for row in a:
            prod *= sum(row[j] for j in cols)
            if not prod:
                break
        total += (-1) ** len(cols) * prod
    return (-1) ** n * total


@pytest.fixture(scope="session")
def c6():
    return from_spec(cycle_spec(6))


@pytest.fixture(scope="session")
def k2_graph():
    return k2()


@pytest.fixture(scope="session")
def naphthalene():
    return generators.naphthalene()


@pytest.fixture(scope="session")
def anthracene():
    return generators.anthracene()


@pytest.fixture(scope="session")
def bridged():
    return generators.bridged_hexagons()


@pytest.fixture(scope="session")
def coronene():
    return generators.coronene_like()


@pytest.fixture(scope="session")
def witness():
    return generators.search_non_weakly_elementary(14)


def small_corpus():
    """Named plane graphs used across modules (all with perfect matchings)."""
    out = [("hexagon", generators.hexagon())]
    out += [(f"chain:{c or '-'}", generators.benzenoid_chain(c)) for c in generators.chain_codes(5)]
    out += [
        ("C4", generators.even_cycle(2)),
        ("C8", generators.even_cycle(4)),
        ("coronene", generators.coronene_like()),
        ("bridged", generators.bridged_hexagons()),
        ("two-component", generators.two_component_graph()),
        ("anthracene-bridged", generators.anthracene_bridged_hexagon()),
        ("ring6", generators.handle_ring(6, [(0, 3, 3)])),
        ("ring4", generators.handle_ring(4, [(0, 1, 3)])),
        ("ring10", generators.handle_ring(10, [(0, 3, 3), (4, 7, 3)])),
        ("witness", generators.search_non_weakly_elementary(14)),
    ]
    return out


SMALL_CORPUS = small_corpus()
