import networkx as nx
import pytest

from conftest import SMALL_CORPUS, cycle_spec
from reskit import generators
from reskit.errors import (
    AmbiguousOuterFace,
    BadRotation,
    DegreeNot2,
    Disconnected,
    EulerViolation,
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
from reskit.io import to_dict
from reskit.plane_graph import (
    Color,
    HandleKind,
    PlaneBipartiteGraph,
    adjacent_triples,
    classify,
    delete_edges,
    disjoint_union,
    from_spec,
    handles,
    is_outerplane,
    is_peripherally_2_colorable,
    line_distance,
    outerplanarize,
    smooth_path,
    subdivide_edge,
)


class TestConstruction:
    def test_k2(self, k2_graph):
        assert k2_graph.num_vertices == 2 and k2_graph.num_edges == 1
        assert len(k2_graph.faces) == 1
        assert k2_graph.faces[0].infinite
        assert k2_graph.is_k2

    def test_c6(self, c6):
        assert len(c6.finite_faces) == 1
        assert len(c6.infinite_faces) == 1
        assert c6.finite_faces[0].length == 6

    def test_edge_listed_once_is_bad_rotation(self):
        spec = cycle_spec(6)
        spec["rotations"]["3"] = [3]
        with pytest.raises(BadRotation):
            from_spec(spec)

    def test_monochromatic_edge(self):
        spec = cycle_spec(6)
        spec["vertices"][1]["color"] = "black"
        with pytest.raises(NotBipartite):
            from_spec(spec)

    def test_k33_has_no_planar_rotation(self):
        colors = {i: "black" if i < 3 else "white" for i in range(6)}
        edges = {3 * a + b: (a, 3 + b) for a in range(3) for b in range(3)}
        rotation = {v: sorted(e for e, p in edges.items() if v in p) for v in range(6)}
        with pytest.raises(EulerViolation):
            PlaneBipartiteGraph(colors, edges, rotation)

    def test_theta_graph_without_hint_is_ambiguous(self):
        g = generators.handle_ring(6, [(0, 3, 3)])
        spec = to_dict(g)
        del spec["outer_face"]
        with pytest.raises(AmbiguousOuterFace):
            from_spec(spec)
        assert from_spec(to_dict(g)) == g

    def test_cycle_without_hint_is_fine(self):
        # both faces of a cycle have the same edge set, so either may be outer
        g = from_spec(cycle_spec(8))
        assert len(g.finite_faces) == 1

    def test_hint_selects_the_outer_face(self, c6):
        inner_dart = c6.finite_faces[0].darts[0]
        g = from_spec(cycle_spec(6, {"edge": inner_dart[0], "from": inner_dart[1]}))
        assert g.infinite_faces[0].darts[0] == inner_dart

    def test_longest_walk_is_outer_by_default(self, naphthalene):
        spec = to_dict(naphthalene)
        del spec["outer_face"]
        g = from_spec(spec)
        assert g.infinite_faces[0].length == 10

    def test_face_ids_follow_smallest_dart(self, naphthalene):
        firsts = [f.darts[0] for f in naphthalene.faces]
        assert firsts == sorted(firsts)
        assert [f.id for f in naphthalene.faces] == list(range(len(naphthalene.faces)))


class TestFaces:
    @pytest.mark.parametrize("name,g", SMALL_CORPUS)
    def test_every_dart_once_and_lengths_sum(self, name, g):
        darts = [d for f in g.faces for d in f.darts]
        assert len(darts) == len(set(darts)) == 2 * g.num_edges
        assert sum(f.length for f in g.faces) == 2 * g.num_edges

    @pytest.mark.parametrize("name,g", SMALL_CORPUS)
    def test_euler_per_component(self, name, g):
        c = len(g.components)
        assert g.num_vertices - g.num_edges + len(g.faces) == 2 * c
        assert len(g.infinite_faces) == c

    def test_naphthalene(self, naphthalene):
        assert [f.length for f in naphthalene.finite_faces] == [6, 6]

    def test_two_connected_faces_are_even_cycles(self):
        for name, g in SMALL_CORPUS:
            if g.is_two_connected:
                assert all(f.is_cycle and f.length % 2 == 0 for f in g.faces), name

    def test_finite_face_count_connected(self):
        for name, g in SMALL_CORPUS:
            if g.is_connected:
                assert len(g.finite_faces) == g.num_edges - g.num_vertices + 1, name


class TestClassify:
    def test_c6_outerplane(self, c6):
        cls = classify(c6)
        assert cls.exterior_vertices == frozenset(c6.vertices)
        assert not cls.interior_edges
        assert is_outerplane(c6)

    def test_naphthalene_shared_edge(self, naphthalene):
        cls = classify(naphthalene)
        assert len(cls.interior_edges) == 1
        (e,) = cls.interior_edges
        assert set(naphthalene.endpoints(e)) <= cls.exterior_vertices
        assert is_outerplane(naphthalene)

    def test_coronene_interior_vertices(self, coronene):
        cls = classify(coronene)
        assert len(cls.interior_vertices) == 6
        assert all(coronene.degree(v) == 3 for v in cls.interior_vertices)

    @pytest.mark.parametrize("name,g", [x for x in SMALL_CORPUS if x[1].is_connected])
    def test_interior_edge_iff_two_finite_faces(self, name, g):
        cls = classify(g)
        for e in g.edge_ids:
            a, b = g.faces_of_edge(e)
            assert (e in cls.interior_edges) == (not a.infinite and not b.infinite)

    def test_disconnected(self):
        with pytest.raises(Disconnected):
            classify(disjoint_union(generators.hexagon(), generators.hexagon()))


class TestHandles:
    def test_naphthalene(self, naphthalene):
        hs = handles(naphthalene)
        assert sorted((h.kind, h.length) for h in hs) == sorted(
            [(HandleKind.EXTERIOR, 5), (HandleKind.EXTERIOR, 5), (HandleKind.INTERIOR, 1)]
        )

    def test_anthracene(self, anthracene):
        hs = handles(anthracene)
        interior = sorted(h.length for h in hs if h.kind is HandleKind.INTERIOR)
        exterior = sorted(h.length for h in hs if h.kind is HandleKind.EXTERIOR)
        assert interior == [1, 1]
        assert exterior == [2, 2, 5, 5]

    def test_k2_single_trivial_handle(self, k2_graph):
        (h,) = handles(k2_graph)
        assert h.length == 1 and not h.closed

    def test_cycle_is_one_closed_handle(self, c6):
        (h,) = handles(c6)
        assert h.closed and h.length == 6 and h.path[0] == h.path[-1]

    @pytest.mark.parametrize("name,g", [x for x in SMALL_CORPUS if x[1].is_connected])
    def test_edges_partitioned(self, name, g):
        es = [e for h in handles(g) for e in h.edges]
        assert sorted(es) == sorted(g.edge_ids)
        for h in handles(g):
            assert all(g.degree(v) == 2 for v in h.internal)


class TestTriples:
    def test_naphthalene_none(self, naphthalene):
        assert adjacent_triples(naphthalene) == []

    def test_anthracene_linear(self, anthracene):
        (t,) = adjacent_triples(anthracene)
        assert t.line_distance == 3
        assert t.classification == "linear"

    def test_zigzag_angular(self):
        (t,) = adjacent_triples(generators.fibonaccene(3))
        assert t.line_distance == 2
        assert t.classification == "angular"

    def test_line_distance_matches_networkx(self, anthracene):
        lg = nx.line_graph(anthracene.to_networkx())
        key = {e: tuple(sorted(p)) for e, p in anthracene.edges.items()}
        d = dict(nx.all_pairs_shortest_path_length(lg))
        for e in anthracene.edge_ids:
            for f in anthracene.edge_ids:
                assert line_distance(anthracene, e, f) == d[key[e]][key[f]]

    def test_requires_outerplane(self, coronene):
        with pytest.raises(NotOuterplane):
            adjacent_triples(coronene)

    def test_requires_two_connected(self, bridged):
        with pytest.raises(NotTwoConnected):
            adjacent_triples(bridged)


class TestPeripheralColoring:
    def test_c6(self, c6):
        assert is_peripherally_2_colorable(c6)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_zigzag_chains(self, n):
        assert is_peripherally_2_colorable(generators.fibonaccene(n))

    def test_anthracene(self, anthracene):
        res = is_peripherally_2_colorable(anthracene)
        assert not res
        assert res.branch_colors == (Color.WHITE, Color.WHITE, Color.BLACK, Color.BLACK)

    def test_k2(self, k2_graph):
        with pytest.raises(IsK2):
            is_peripherally_2_colorable(k2_graph)

    def test_non_elementary(self, bridged):
        with pytest.raises(NotElementary):
            is_peripherally_2_colorable(bridged)
        assert not is_peripherally_2_colorable(bridged, check_elementary=False)

    def test_matches_absence_of_linear_triples(self):
        for code in generators.chain_codes(7):
            g = generators.benzenoid_chain(code)
            linear = any(t.is_linear for t in adjacent_triples(g))
            assert bool(is_peripherally_2_colorable(g)) == (not linear), code


class TestSurgery:
    def test_subdivide_k2(self, k2_graph):
        p = subdivide_edge(k2_graph, 0, 2)
        assert p.num_vertices == 4 and p.num_edges == 3
        assert nx.is_isomorphic(p.to_networkx(), nx.path_graph(4))
        assert p.color(0) is not p.color(1)

    @pytest.mark.parametrize("k", [0, 1, 3])
    def test_odd_subdivision(self, c6, k):
        with pytest.raises(OddSubdivision):
            subdivide_edge(c6, 0, k)

    def test_subdivide_keeps_faces(self, naphthalene):
        e = sorted(classify(naphthalene).exterior_edges)[0]
        g = subdivide_edge(naphthalene, e, 4)
        assert len(g.finite_faces) == 2
        assert g.num_vertices == naphthalene.num_vertices + 4

    def test_subdivide_then_smooth_roundtrip(self, naphthalene):
        e = sorted(naphthalene.edge_ids)[0]
        g = subdivide_edge(naphthalene, e, 2)
        new = sorted(set(g.vertices) - set(naphthalene.vertices))
        u, _ = naphthalene.endpoints(e)
        order = new if g.edge_between(u, new[0]) is not None else new[::-1]
        assert smooth_path(g, order) == naphthalene

    def test_smooth_degree_check(self, anthracene):
        v = next(v for v in anthracene.vertices if anthracene.degree(v) == 3)
        with pytest.raises(DegreeNot2):
            smooth_path(anthracene, [v])

    def test_smooth_single_vertex_is_odd(self, c6):
        with pytest.raises(OddSmoothing):
            smooth_path(c6, [0])

    def test_smooth_middle_of_length_two_handle_is_odd(self, anthracene):
        h = next(h for h in handles(anthracene) if h.length == 2)
        with pytest.raises(OddSmoothing):
            smooth_path(anthracene, h.internal)

    def test_smooth_into_existing_edge(self):
        g = generators.handle_ring(4, [(0, 1, 3)])
        h = next(h for h in handles(g) if h.kind is HandleKind.INTERIOR)
        with pytest.raises(WouldCreateMultiEdge):
            smooth_path(g, h.internal)


class TestOuterplanarize:
    def test_outerplane_graph_is_unchanged(self):
        g = generators.fibonaccene(4)
        h, bij = outerplanarize(g)
        assert h == g
        assert not bij.contracted and not bij.expanded

    def test_contracts_interior_handle(self):
        g = generators.handle_ring(6, [(0, 3, 3)])
        assert not is_outerplane(g)
        h, bij = outerplanarize(g)
        assert is_outerplane(h)
        assert len(h.finite_faces) == len(g.finite_faces)
        assert h.num_edges == g.num_edges - 2
        assert len(bij.contracted) == 1 and not bij.expanded

    def test_adjacent_ends_are_expanded_first(self):
        g = generators.handle_ring(4, [(0, 1, 3)])
        h, bij = outerplanarize(g)
        assert is_outerplane(h)
        assert len(bij.expanded) == 1
        assert len(h.finite_faces) == 2

    def test_rejects_non_colorable(self, anthracene):
        with pytest.raises(NotPeripherally2Colorable):
            outerplanarize(anthracene)


class TestDeletion:
    def test_bridge_deletion_no_new_face(self, bridged):
        (bridge,) = [e for e in bridged.edge_ids if not any(not f.infinite for f in bridged.faces_of_edge(e))]
        cut = delete_edges(bridged, [bridge])
        assert len(cut.components) == 2
        assert not cut.new_faces
        assert len(cut.finite_regions) == 2

    def test_nested_components(self, witness):
        from reskit.matching import forbidden_edges

        cut = delete_edges(witness, forbidden_edges(witness))
        assert len(cut.components) == 2
        assert len(cut.new_faces) == 1
        # the inner cycle has its own outer face after the split
        assert all(len(c.infinite_faces) == 1 for c in cut.components)
