import itertools

import pytest

from reskit import generators
from reskit.cube import is_daisy_cube, is_isomorphic, cycle_graph, path_graph
from reskit.errors import NotFound, SelfOverlap
from reskit.matching import allowed_edges, elementary_decomposition, fries_number
from reskit.plane_graph import (
    adjacent_triples,
    classify,
    delete_edges,
    is_outerplane,
    is_peripherally_2_colorable,
)
from reskit.resonance import build_resonance_graph


def shape_key(g):
    """Cheap isomorphism-invariant fingerprint of a plane graph."""
    return (
        g.num_vertices,
        g.num_edges,
        tuple(sorted(g.degree(v) for v in g.vertices)),
        tuple(sorted(len(f.edges) for f in g.finite_faces)),
    )


def same_plane_graph(a, b):
    ra = build_resonance_graph(a).to_simple()
    rb = build_resonance_graph(b).to_simple()
    return shape_key(a) == shape_key(b) and is_isomorphic(ra, rb) is not None


class TestChainCells:
    def test_straight(self):
        cells = generators.chain_cells("SS")
        assert len(cells) == 4 and len(set(cells)) == 4

    @pytest.mark.parametrize("code", ["LLLL", "RRRR", "LLLLL"])
    def test_self_overlap(self, code):
        with pytest.raises(SelfOverlap):
            generators.benzenoid_chain(code)

    def test_bad_letter(self):
        with pytest.raises(ValueError):
            generators.chain_cells("LX")

    @pytest.mark.parametrize("code", ["", "S", "L", "LR", "SLS", "LRL", "LLRR"])
    def test_consecutive_cells_share_an_edge(self, code):
        g = generators.benzenoid_chain(code)
        faces = g.finite_faces
        assert len(faces) == len(code) + 2
        shared = sum(1 for a, b in itertools.combinations(faces, 2) if a.edges & b.edges)
        assert shared == len(code) + 1
        assert g.num_vertices == 4 * len(faces) + 2
        assert is_outerplane(g)


class TestNamedChains:
    def test_naphthalene(self):
        a, b, c = generators.naphthalene(), generators.fibonaccene(2), generators.polyacene(2)
        assert a == b == c

    def test_anthracene(self):
        assert generators.anthracene() == generators.polyacene(3)
        (t,) = adjacent_triples(generators.anthracene())
        assert t.classification == "linear" and t.line_distance == 3

    @pytest.mark.parametrize("n", range(3, 7))
    def test_polyacene_linear_triples(self, n):
        triples = adjacent_triples(generators.polyacene(n))
        assert len(triples) == n - 2
        assert all(t.is_linear for t in triples)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_fibonaccene_no_linear_triple(self, n):
        assert not any(t.is_linear for t in adjacent_triples(generators.fibonaccene(n)))

    def test_fibonaccene_three(self):
        (t,) = adjacent_triples(generators.fibonaccene(3))
        assert t.line_distance == 2 and not t.is_linear

    def test_fibonaccene_six(self):
        g = generators.fibonaccene(6)
        assert len(g.finite_faces) == 6
        assert is_peripherally_2_colorable(g)

    def test_hexagon(self):
        g = generators.fibonaccene(1)
        assert g.num_vertices == 6 and len(g.finite_faces) == 1

    def test_fibonaccene_code(self):
        assert generators.fibonaccene_code(5) == "LRL"


class TestEnumeration:
    @pytest.mark.parametrize("h,count", [(2, 1), (3, 2), (4, 4)])
    def test_counts_per_size(self, h, count):
        assert len(generators.chain_codes(h, min_h=h)) == count

    def test_cumulative(self):
        assert len(generators.chain_codes(4)) == 1 + 2 + 4
        assert len(list(generators.enumerate_chains(4))) == 7

    def test_max_h_two(self):
        (g,) = generators.enumerate_chains(2)
        assert g == generators.naphthalene()

    def test_max_h_three(self):
        codes = generators.chain_codes(3, min_h=3)
        assert sorted(codes) == ["L", "S"]

    def test_size_four_classes(self):
        codes = set(generators.chain_codes(4, min_h=4))
        assert codes == {generators.canonical_code(c) for c in ["SS", "SL", "LL", "LR"]}

    @pytest.mark.parametrize("h", range(2, 7))
    def test_brute_force_orbits(self, h):
        # oracle: every code over {L,R,S}, drop overlaps, collapse symmetry orbits
        valid = set()
        for letters in itertools.product("LRS", repeat=h - 2):
            code = "".join(letters)
            try:
                generators.chain_cells(code)
            except SelfOverlap:
                continue
            swap = code.translate(str.maketrans("LR", "RL"))
            valid.add(min(code, swap, code[::-1], swap[::-1]))
        assert sorted(generators.chain_codes(h, min_h=h)) == sorted(valid)

    @pytest.mark.parametrize("code", ["SL", "LRS", "LLR"])
    def test_symmetric_codes_give_same_graph(self, code):
        swap = code.translate(str.maketrans("LR", "RL"))
        a = generators.benzenoid_chain(code)
        for other in (swap, code[::-1]):
            assert same_plane_graph(a, generators.benzenoid_chain(other))

    def test_limit(self):
        with pytest.raises(ValueError):
            generators.chain_codes(9)


class TestFixedInstances:
    def test_even_cycle_rejects_small(self):
        with pytest.raises(ValueError):
            generators.even_cycle(1)

    def test_c6(self):
        g = generators.even_cycle(3)
        assert g.num_vertices == 6 and len(g.finite_faces) == 1

    def test_c4_resonance_is_k2(self):
        r = build_resonance_graph(generators.even_cycle(2)).to_simple()
        assert is_isomorphic(r, path_graph(2)) is not None

    def test_c8_fries(self):
        assert fries_number(generators.even_cycle(4))[0] == 1

    def test_bridged(self):
        g = generators.bridged_hexagons()
        dec = elementary_decomposition(g)
        assert len(dec.components) == 2 and dec.weakly_elementary
        assert all(c.num_vertices == 6 for c in dec.components)
        r = build_resonance_graph(g).to_simple()
        assert is_isomorphic(r, cycle_graph(4)) is not None

    def test_bridged_faces_kept(self):
        g = generators.bridged_hexagons()
        forbidden = set(g.edge_ids) - allowed_edges(g)
        after = delete_edges(g, forbidden)
        assert len(g.finite_faces) == 2
        assert len(after.finite_regions) == 2
        assert {f.edges for f in g.finite_faces} == set(after.finite_regions)
        assert after.new_faces == ()

    def test_coronene(self):
        g = generators.coronene_like()
        cls = classify(g)
        assert any(g.degree(v) == 3 for v in cls.interior_vertices)
        assert fries_number(g)[0] < len(g.finite_faces)
        assert is_daisy_cube(build_resonance_graph(g).to_simple()) is None

    def test_two_component(self):
        g = generators.two_component_graph()
        dec = elementary_decomposition(g)
        assert sorted(len(c.finite_faces) for c in dec.components) == [2, 3]
        assert dec.weakly_elementary
        cert = is_daisy_cube(build_resonance_graph(g).to_simple())
        assert cert is not None and cert.idim == 5

    def test_handle_ring(self):
        g = generators.handle_ring(6, [(0, 3, 3)])
        assert not is_outerplane(g)
        assert is_peripherally_2_colorable(g)
        assert len(g.finite_faces) == 2

    @pytest.mark.parametrize("args", [(5, []), (2, []), (6, [(0, 1, 1)]), (6, [(0, 3, 0)])])
    def test_handle_ring_rejects(self, args):
        with pytest.raises(ValueError):
            generators.handle_ring(*args)


class TestSearch:
    def test_small_bound(self):
        with pytest.raises(NotFound):
            generators.search_non_weakly_elementary(6)

    def test_bound_limit(self):
        with pytest.raises(ValueError):
            generators.search_non_weakly_elementary(16)

    def test_witness(self):
        g = generators.search_non_weakly_elementary(14)
        dec = elementary_decomposition(g)
        assert not dec.weakly_elementary
        before = {f.edges for f in g.finite_faces}
        after = set(delete_edges(g, dec.forbidden_edges).finite_regions)
        assert not after <= before
        assert build_resonance_graph(g).to_simple().num_components() >= 2

    def test_deterministic(self):
        assert generators.search_non_weakly_elementary(10) == generators.search_non_weakly_elementary(14)


class TestRegistry:
    @pytest.mark.parametrize(
        "family,params,faces",
        [
            ("cycle", ["3"], 1),
            ("chain", ["LR"], 4),
            ("chain", [], 2),
            ("fibonaccene", ["4"], 4),
            ("polyacene", ["3"], 3),
            ("bridged", [], 2),
            ("coronene", [], 7),
            ("two-component", [], 6),
            ("anthracene-bridged", [], 4),
            ("handle-ring", ["6", "0,3,3"], 2),
        ],
    )
    def test_families(self, family, params, faces):
        assert len(generators.generate(family, params).finite_faces) == faces

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown family"):
            generators.generate("nope")

    def test_missing_param(self):
        with pytest.raises(ValueError):
            generators.generate("cycle")
