"""Acceptance suite: eleven end-to-end criteria with timing bounds.

Each criterion returns ``(ok, detail)``.  Under pytest every criterion is one
test and prints a single PASS/FAIL line; ``python tests/test_acceptance.py``
prints the same lines and exits non-zero on any failure.
"""

from __future__ import annotations

import sys
import time
from functools import lru_cache

import pytest

from reskit import generators, theorems
from reskit.cube import (
    cartesian_product,
    cycle_graph,
    fibonacci_cube,
    is_daisy_cube,
    is_isomorphic,
    is_isomorphism,
    is_median_graph,
    path_graph,
    product_of,
    theta_partition,
)
from reskit.errors import NotFound
from reskit.matching import (
    allowed_edges,
    elementary_decomposition,
    fries_number,
    fries_number_by_subsets,
    has_perfect_matching,
    is_elementary,
)
from reskit.plane_graph import adjacent_triples
from reskit.resonance import build_resonance_graph
from reskit.theorems import (
    structural_conclusions,
    verify_elementary_characterization,
    verify_outerplanarization,
    verify_product_daisy,
)


@lru_cache(maxsize=None)
def corpus():
    """Chains with up to six hexagons plus the fixed and searched instances."""
    entries = theorems.chain_corpus(6) + theorems.extra_corpus(14)
    return [(e.name, e.graph) for e in entries if has_perfect_matching(e.graph)]


@lru_cache(maxsize=None)
def resonance(name):
    g = dict(corpus())[name]
    return build_resonance_graph(g).to_simple()


def fibonaccene_family():
    start = time.perf_counter()
    bad = []
    for n in range(1, 7):
        r = build_resonance_graph(generators.fibonaccene(n)).to_simple()
        target = fibonacci_cube(n)
        f = is_isomorphic(r, target)
        cert = is_daisy_cube(r)
        expected = [2, 3, 5, 8, 13, 21][n - 1]
        if f is None or not is_isomorphism(r, target, f) or r.n != expected or cert is None or cert.idim != n:
            bad.append(n)
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 5, f"n=1..6 mismatches={bad} time={elapsed:.2f}s (<5s)"


def elementary_characterization():
    start = time.perf_counter()
    graphs = [(f"chain:{c}", generators.benzenoid_chain(c)) for c in generators.chain_codes(6)]
    graphs += [("hexagon", generators.hexagon())]
    graphs += [(f"C{2 * k}", generators.even_cycle(k)) for k in (2, 3, 4)]
    graphs += [("coronene-like", generators.coronene_like())]
    bad = []
    for name, g in graphs:
        r = verify_elementary_characterization(g, name)
        if not r.agree:
            bad.append(name)
    elapsed = time.perf_counter() - start
    return not bad and elapsed < 60, f"{len(graphs)} graphs disagreements={bad} time={elapsed:.2f}s (<60s)"


def anthracene_negative():
    g = generators.anthracene()
    fries = fries_number(g)[0]
    triples = adjacent_triples(g)
    linear = [t for t in triples if t.is_linear]
    r = build_resonance_graph(g).to_simple()
    f = is_isomorphic(r, path_graph(4))
    p4 = f is not None and is_isomorphism(r, path_graph(4), f)
    cert = is_daisy_cube(r)
    ok = fries == 2 and len(linear) == 1 and linear[0].line_distance == 3 and p4 and cert is None
    return ok, f"fries={fries} linear_triples={len(linear)} line_distance={[t.line_distance for t in linear]} R=P4:{p4} daisy={cert is not None}"


def fries_structure():
    violations = []
    forward = contra = 0
    for name, g in corpus():
        if not g.is_two_connected:
            continue
        n = len(g.finite_faces)
        fries = fries_number(g)[0]
        holds = all(structural_conclusions(g).values())
        if fries == n:
            forward += 1
            if not holds:
                violations.append(name)
        if not holds:
            contra += 1
            if fries >= n:
                violations.append(name)
    return not violations, f"fries=n graphs={forward} graphs violating a conclusion={contra} violations={violations}"


def product_theorem():
    start = time.perf_counter()
    entries = theorems.product_corpus(seed=0)
    pairs = sum(len(e.factors) == 2 for e in entries)
    triples = sum(len(e.factors) == 3 for e in entries)
    bad = [e.name for e in entries if not verify_product_daisy(e.factors, e.name).agree]
    elapsed = time.perf_counter() - start
    ok = not bad and pairs >= 50 and triples >= 20 and elapsed < 60
    return ok, f"pairs={pairs} triples={triples} disagreements={bad} time={elapsed:.2f}s (<60s)"


def decomposition():
    details = []
    ok = True
    for name, g, expect in [
        ("bridged-hexagons", generators.bridged_hexagons(), [1, 1]),
        ("two-component", generators.two_component_graph(), [2, 3]),
    ]:
        dec = elementary_decomposition(g)
        rs = build_resonance_graph(g).to_simple()
        parts = [build_resonance_graph(c).to_simple() for c in dec.components]
        prod = product_of(parts)
        f = is_isomorphic(rs, prod)
        witnessed = f is not None and is_isomorphism(rs, prod, f)
        cert = is_daisy_cube(rs)
        idims = sorted(is_daisy_cube(p).idim for p in parts)
        good = dec.weakly_elementary and witnessed and cert is not None and cert.idim == sum(expect) and idims == expect
        if name == "bridged-hexagons":
            c4 = is_isomorphic(rs, cycle_graph(4))
            r6 = build_resonance_graph(generators.hexagon()).to_simple()
            sq = is_isomorphic(rs, cartesian_product(r6, r6))
            good = good and c4 is not None and is_isomorphism(rs, cycle_graph(4), c4) and sq is not None
        ok = ok and good
        details.append(f"{name}: idim={cert.idim if cert else None}={'+'.join(map(str, idims))} witness={witnessed}")
    return ok, "; ".join(details)


def connectivity():
    bad = []
    weak = 0
    for name, g in corpus():
        we = elementary_decomposition(g).weakly_elementary
        weak += we
        if resonance(name).is_connected != we:
            bad.append(name)
    try:
        w = generators.search_non_weakly_elementary(14)
        dec = elementary_decomposition(w)
        comps = build_resonance_graph(w).to_simple().num_components()
        found = f"witness |V|={w.num_vertices} |E|={w.num_edges} R components={comps}"
        if dec.weakly_elementary or comps < 2:
            bad.append("search witness")
    except NotFound:
        found = "NotFound up to 14 vertices"
    return not bad, f"weakly elementary={weak}/{len(corpus())} mismatches={bad}; {found}"


def median_property():
    bad = []
    checked = 0
    for name, g in corpus():
        r = resonance(name)
        if elementary_decomposition(g).weakly_elementary and r.n <= 200:
            checked += 1
            if not is_median_graph(r):
                bad.append(name)
    return not bad and checked > 0, f"checked={checked} non-median={bad}"


def face_theta_bijection():
    bad = []
    checked = 0
    for name, g in corpus():
        r = resonance(name)
        if is_daisy_cube(r) is None:
            continue
        checked += 1
        classes = theta_partition(r) if r.num_edges else []
        labels = [{r.label(*r.edges[i]) for i in cls} for cls in classes]
        single = all(len(ls) == 1 for ls in labels)
        mapped = sorted(next(iter(ls)) for ls in labels) if single else None
        if is_elementary(g) and not g.is_k2:
            target = sorted(f.id for f in g.finite_faces)
        else:
            # faces that are never resonant carry no edge of R
            target = sorted({r.label(u, v) for u, v in r.edges})
        if not single or mapped != target:
            bad.append(name)
    return not bad and checked > 0, f"daisy graphs checked={checked} violations={bad}"


def outerplanarization():
    bad = []
    applied = 0
    for name, g in corpus():
        rep = verify_outerplanarization(g, name)
        if rep.applicable:
            applied += 1
            if not (rep.left and rep.right):
                bad.append(name)
    return not bad and applied > 0, f"graphs with interior handles={applied} violations={bad}"


def oracle_agreement():
    bad = []
    small = 0
    for name, g in corpus():
        if allowed_edges(g, "alternating") != allowed_edges(g, "enumerate"):
            bad.append(f"{name}:allowed")
        if len(g.finite_faces) <= 4:
            small += 1
            if fries_number(g)[0] != fries_number_by_subsets(g):
                bad.append(f"{name}:fries")
    return not bad, f"graphs={len(corpus())} fries subset checks={small} mismatches={bad}"


CRITERIA = [
    (1, "fibonaccene resonance graphs are Fibonacci cubes", fibonaccene_family),
    (2, "three elementary characterizations agree", elementary_characterization),
    (3, "anthracene negative control", anthracene_negative),
    (4, "Fries number and structure", fries_structure),
    (5, "daisy products", product_theorem),
    (6, "decomposition into elementary components", decomposition),
    (7, "connectivity iff weakly elementary", connectivity),
    (8, "median resonance graphs", median_property),
    (9, "Theta classes match faces", face_theta_bijection),
    (10, "outerplanarization keeps the resonance graph", outerplanarization),
    (11, "fast paths agree with oracles", oracle_agreement),
]


def _line(number, title, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion-{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(number, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for number, title, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(number, title, ok, detail))
    sys.exit(1 if failed else 0)
