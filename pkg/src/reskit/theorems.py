"""Executable checks of the structural theorems linking plane bipartite
graphs, their resonance graphs and daisy cubes.

Every verifier evaluates the two sides of a statement by separate routes and
returns a :class:`TheoremReport`; the corpus runner aggregates them.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from . import cube, generators
from .cube import SimpleGraph, is_daisy_cube, is_isomorphic, product_of, theta_partition
from .errors import (
    IsK2,
    LimitExceeded,
    NoPerfectMatching,
    NotElementary,
    NotFound,
    ReskitError,
)
from .matching import (
    elementary_decomposition,
    fries_number,
    has_perfect_matching,
    is_elementary,
)
from .plane_graph import (
    HandleKind,
    PlaneBipartiteGraph,
    classify,
    disjoint_union,
    handles,
    is_peripherally_2_colorable,
    outerplanarize,
)
from .resonance import build_resonance_graph

log = logging.getLogger(__name__)


@dataclass
class TheoremReport:
    """Outcome of one verifier on one graph.

    ``kind`` is "iff" (left and right must be equal) or "implies" (left must
    imply right).  ``also`` holds further statements that must equal
    ``left``; ``checks`` holds side conditions that must all hold.  A report
    with ``applicable = False`` records a failed precondition and counts as
    agreeing.
    """

    theorem: str
    graph: str
    left: bool
    right: bool
    kind: str = "iff"
    also: dict[str, bool] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    evidence: dict[str, Any] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    applicable: bool = True
    note: str = ""

    @property
    def agree(self) -> bool:
        if not self.applicable:
            return True
        if self.kind == "implies":
            ok = (not self.left) or self.right
        else:
            ok = self.left == self.right and all(v == self.left for v in self.also.values())
        return ok and all(self.checks.values())

    def to_json(self) -> dict[str, Any]:
        wit = dict(self.witnesses)
        if self.also:
            wit["also"] = dict(self.also)
        if self.checks:
            wit["checks"] = dict(self.checks)
        if self.evidence:
            wit["evidence"] = dict(self.evidence)
        if not self.applicable:
            wit["applicable"] = False
            wit["note"] = self.note
        return {
            "theorem": self.theorem,
            "graph": self.graph,
            "left": self.left,
            "right": self.right,
            "agree": self.agree,
            "witnesses": wit,
        }


def _resonance_daisy(g: PlaneBipartiteGraph, limit: int | None):
    r = build_resonance_graph(g, limit)
    simple = r.to_simple()
    return r, simple, is_daisy_cube(simple)


def verify_idim0_components(g: PlaneBipartiteGraph, name: str = "", limit: int | None = None) -> TheoremReport:
    """R(G) is a single vertex exactly when G is weakly elementary with only
    K2 elementary components."""
    r, simple, cert = _resonance_daisy(g, limit)
    left = cert is not None and cert.idim == 0
    dec = elementary_decomposition(g, method="alternating")
    right = dec.weakly_elementary and all(c.is_k2 for c in dec.components)
    return TheoremReport(
        "idim0-components",
        name,
        left,
        right,
        evidence={"resonance_vertices": simple.n, "components": len(dec.components)},
        witnesses={"k2_components": dec.k2_components, "idim": cert.idim if cert else None},
    )


def verify_connectivity(g: PlaneBipartiteGraph, name: str = "", limit: int | None = None) -> TheoremReport:
    """R(G) is connected exactly when G is weakly elementary."""
    simple = build_resonance_graph(g, limit).to_simple()
    left = simple.is_connected
    dec = elementary_decomposition(g, method="alternating")
    return TheoremReport(
        "connectivity",
        name,
        left,
        dec.weakly_elementary,
        witnesses={
            "resonance_components": simple.num_components(),
            "forbidden_edges": sorted(dec.forbidden_edges),
            "new_faces": [sorted(f) for f in dec.new_faces],
        },
    )


def verify_elementary_characterization(
    g: PlaneBipartiteGraph, name: str = "", limit: int | None = None
) -> TheoremReport:
    """For elementary G other than K2 with n finite faces, three statements
    coincide: R(G) is a daisy cube of dimension n; the Fries number is n; G
    is peripherally 2-colorable.

    Raises IsK2 or NotElementary when the hypothesis fails.
    """
    if g.is_k2:
        raise IsK2("the statement excludes K2")
    if not is_elementary(g, cross_check=False):
        raise NotElementary("graph is not elementary")
    n = len(g.finite_faces)
    if n < 1:
        raise AssertionError("an elementary graph other than K2 has a finite face")
    _, simple, cert = _resonance_daisy(g, limit)
    daisy = cert is not None and cert.idim == n
    fries, witness = fries_number(g, limit)
    coloring = is_peripherally_2_colorable(g, check_elementary=False)
    return TheoremReport(
        "elementary-daisy",
        name,
        daisy,
        fries == n,
        also={"peripherally_2_colorable": coloring.value},
        evidence={
            "finite_faces": n,
            "fries": fries,
            "idim": cert.idim if cert else None,
            "coloring_reason": coloring.reason,
        },
        witnesses={
            "fries_matching": list(witness.edges),
            "certificate": cert.to_json() if cert else None,
        },
    )


def verify_face_theta_bijection(g: PlaneBipartiteGraph, name: str = "", limit: int | None = None) -> TheoremReport:
    """When R(G) is a daisy cube, its Theta-classes match the finite faces:
    each class carries one face label and labels identify classes.

    Non-elementary graphs, K2 and a non-daisy R(G) are reported as not
    applicable.
    """
    if g.is_k2 or not is_elementary(g, cross_check=False):
        return TheoremReport(
            "face-theta-bijection", name, False, False, applicable=False, note="needs an elementary graph other than K2"
        )
    r, simple, cert = _resonance_daisy(g, limit)
    n = len(g.finite_faces)
    if cert is None:
        return TheoremReport(
            "face-theta-bijection", name, False, False, applicable=False, note="resonance graph is not a daisy cube"
        )
    classes = theta_partition(simple)
    labels = [sorted({simple.label(*simple.edges[i]) for i in cls}) for cls in classes]
    single = all(len(ls) == 1 for ls in labels)
    mapped = [ls[0] for ls in labels] if single else []
    bijective = single and sorted(mapped) == sorted(f.id for f in g.finite_faces)
    left = len(classes) == n and bijective
    return TheoremReport(
        "face-theta-bijection",
        name,
        left,
        cert.idim == n,
        evidence={"classes": len(classes), "finite_faces": n, "idim": cert.idim},
        witnesses={"class_labels": labels},
    )


def structural_conclusions(g: PlaneBipartiteGraph) -> dict[str, bool]:
    """Interior vertices of degree 2, exterior ones of degree at most 3, odd
    handles (a graph that is a single cycle has no handle ends)."""
    cls = classify(g)
    hs = [h for h in handles(g) if not h.closed]
    return {
        "interior_degree_2": all(g.degree(v) == 2 for v in cls.interior_vertices),
        "exterior_degree_le_3": all(g.degree(v) <= 3 for v in cls.exterior_vertices),
        "handles_odd": all(h.length % 2 == 1 for h in hs),
    }


def verify_fries_structure(g: PlaneBipartiteGraph, name: str = "", limit: int | None = None) -> TheoremReport:
    """A 2-connected graph whose Fries number equals its finite-face count
    has interior degrees 2, exterior degrees at most 3 and odd handles.

    Graphs with a smaller Fries number are reported as not applicable; the
    conclusions are still evaluated so the contrapositive can be inspected.
    """
    n = len(g.finite_faces)
    fries, witness = fries_number(g, limit)
    if not g.is_two_connected:
        return TheoremReport(
            "fries-structure", name, False, False, kind="implies", applicable=False, note="graph is not 2-connected"
        )
    conclusions = structural_conclusions(g)
    left = fries == n
    report = TheoremReport(
        "fries-structure",
        name,
        left,
        all(conclusions.values()),
        kind="implies",
        evidence={"fries": fries, "finite_faces": n, **conclusions},
        witnesses={"fries_matching": list(witness.edges)},
    )
    if fries < n:
        report.applicable, report.note = False, f"Fries number {fries} is below the face count {n}"
    return report


def verify_general_characterization(
    g: PlaneBipartiteGraph, name: str = "", limit: int | None = None
) -> TheoremReport:
    """R(G) is a daisy cube exactly when G is weakly elementary and each
    elementary component other than K2 has a daisy resonance graph of
    dimension equal to its face count.  When G is weakly elementary, R(G) is
    also checked against the product of the components' resonance graphs,
    and the dimensions must add up.
    """
    r, simple, cert = _resonance_daisy(g, limit)
    left = cert is not None
    dec = elementary_decomposition(g, method="alternating")
    parts = []
    right = dec.weakly_elementary
    for comp in dec.components:
        rc = build_resonance_graph(comp, limit).to_simple()
        cc = is_daisy_cube(rc)
        ni = len(comp.finite_faces)
        ok = comp.is_k2 or (cc is not None and cc.idim == ni)
        right = right and ok
        parts.append({"vertices": comp.num_vertices, "finite_faces": ni, "idim": cc.idim if cc else None, "daisy": ok})
        parts[-1]["_r"] = rc
    checks = {}
    witnesses: dict[str, Any] = {"components": [{k: v for k, v in p.items() if k != "_r"} for p in parts]}
    if dec.weakly_elementary:
        prod = product_of([p["_r"] for p in parts])
        iso = is_isomorphic(simple, prod)
        checks["product_isomorphic"] = iso is not None
        witnesses["product_isomorphism"] = sorted(iso.items()) if iso else None
    if left and right:
        total = sum(p["finite_faces"] for p in parts if p["vertices"] > 2)
        checks["idim_additive"] = cert.idim == total
    return TheoremReport(
        "general-daisy",
        name,
        left,
        right,
        checks=checks,
        evidence={"idim": cert.idim if cert else None, "weakly_elementary": dec.weakly_elementary},
        witnesses=witnesses,
    )


def verify_outerplanarization(g: PlaneBipartiteGraph, name: str = "", limit: int | None = None) -> TheoremReport:
    """Contracting interior handles keeps the resonance graph: R(G) is
    isomorphic to R(G'), and the matching bijection maps one perfect-matching
    set onto the other.

    Applies to peripherally 2-colorable graphs with an interior handle of
    length more than one.
    """
    applicable = g.is_two_connected and bool(is_peripherally_2_colorable(g, check_elementary=False)) and any(
        h.kind is HandleKind.INTERIOR and h.length > 1 for h in handles(g)
    )
    if not applicable:
        return TheoremReport(
            "outerplanarization", name, False, False, applicable=False, note="no interior handle to contract"
        )
    h, bij = outerplanarize(g)
    rg, rh = build_resonance_graph(g, limit), build_resonance_graph(h, limit)
    iso = is_isomorphic(rg.to_simple(), rh.to_simple())
    image = sorted(bij.apply(m.bits) for m in rg.vertices)
    target = sorted(m.bits for m in rh.vertices)
    back = all(bij.invert(bij.apply(m.bits)) == m.bits for m in rg.vertices)
    return TheoremReport(
        "outerplanarization",
        name,
        iso is not None,
        image == target and back,
        evidence={"resonance_vertices": rg.num_vertices, "outerplane_edges": h.num_edges},
        witnesses={"isomorphism": sorted(iso.items()) if iso else None},
    )


def verify_product_daisy(factors: Sequence[SimpleGraph], name: str = "") -> TheoremReport:
    """A product of nontrivial graphs is a daisy cube exactly when every
    factor is, with dimensions adding up."""
    prod = product_of(factors)
    cert = is_daisy_cube(prod)
    fcerts = [is_daisy_cube(f) for f in factors]
    right = all(c is not None for c in fcerts)
    checks = {}
    if cert is not None and right:
        checks["idim_additive"] = cert.idim == sum(c.idim for c in fcerts)
    return TheoremReport(
        "cartesian-daisy",
        name,
        cert is not None,
        right,
        checks=checks,
        evidence={
            "product_vertices": prod.n,
            "idim": cert.idim if cert else None,
            "factor_idims": [c.idim if c else None for c in fcerts],
        },
        witnesses={"certificate": cert.to_json() if cert else None},
    )


PLANE_VERIFIERS: tuple[Callable[..., TheoremReport], ...] = (
    verify_idim0_components,
    verify_connectivity,
    verify_elementary_characterization,
    verify_face_theta_bijection,
    verify_fries_structure,
    verify_general_characterization,
    verify_outerplanarization,
)


# -- corpora -----------------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: PlaneBipartiteGraph | None = None
    factors: tuple[SimpleGraph, ...] = ()


def k2() -> PlaneBipartiteGraph:
    return PlaneBipartiteGraph({0: "black", 1: "white"}, {0: (0, 1)}, {0: [0], 1: [0]})


def product_factors() -> list[tuple[str, SimpleGraph]]:
    return [
        ("K2", cube.path_graph(2)),
        ("P3", cube.path_graph(3)),
        ("P4", cube.path_graph(4)),
        ("Q2", cube.hypercube(2)),
        ("Q3", cube.hypercube(3)),
        ("C6", cube.cycle_graph(6)),
        ("Fib3", cube.fibonacci_cube(3)),
        ("Fib4", cube.fibonacci_cube(4)),
        ("Fib5", cube.fibonacci_cube(5)),
    ]


def product_corpus(seed: int = 0, triples: int = 24, max_vertices: int = 400) -> list[CorpusEntry]:
    """All ordered pairs of sample factors plus seeded random triples."""
    fs = product_factors()
    out = [CorpusEntry(f"{a}x{b}", factors=(g, h)) for (a, g), (b, h) in ((x, y) for x in fs for y in fs)]
    rng = random.Random(seed)
    seen = set()
    while len(seen) < triples:
        pick = tuple(rng.randrange(len(fs)) for _ in range(3))
        size = fs[pick[0]][1].n * fs[pick[1]][1].n * fs[pick[2]][1].n
        if pick in seen or size > max_vertices:
            continue
        seen.add(pick)
        out.append(CorpusEntry("x".join(fs[i][0] for i in pick), factors=tuple(fs[i][1] for i in pick)))
    return out


def chain_corpus(max_h: int) -> list[CorpusEntry]:
    out = [CorpusEntry("chain:hexagon", generators.hexagon())]
    for code in generators.chain_codes(max_h):
        out.append(CorpusEntry(f"chain:{code or '-'}", generators.benzenoid_chain(code)))
    return out


def extra_corpus(search_bound: int = 14) -> list[CorpusEntry]:
    out = [
        CorpusEntry("K2", k2()),
        CorpusEntry("2K2", disjoint_union(k2(), k2())),
        CorpusEntry("C4", generators.even_cycle(2)),
        CorpusEntry("C6", generators.even_cycle(3)),
        CorpusEntry("C8", generators.even_cycle(4)),
        CorpusEntry("coronene-like", generators.coronene_like()),
        CorpusEntry("bridged-hexagons", generators.bridged_hexagons()),
        CorpusEntry("two-component", generators.two_component_graph()),
        CorpusEntry("anthracene-bridged", generators.anthracene_bridged_hexagon()),
        CorpusEntry("handle-ring:6:0-3", generators.handle_ring(6, [(0, 3, 3)])),
        CorpusEntry("handle-ring:4:0-1", generators.handle_ring(4, [(0, 1, 3)])),
        CorpusEntry("handle-ring:10:0-3:4-7", generators.handle_ring(10, [(0, 3, 3), (4, 7, 3)])),
        CorpusEntry("handle-ring:8:0-5", generators.handle_ring(8, [(0, 5, 5)])),
    ]
    try:
        out.append(CorpusEntry("non-weakly-elementary", generators.search_non_weakly_elementary(search_bound)))
    except NotFound:
        log.info("no non-weakly-elementary graph within %d vertices", search_bound)
    return out


def build_corpus(spec: str, seed: int = 0) -> list[CorpusEntry]:
    """Corpus from a spec string: ``chains:N``, ``products``, ``extra``,
    ``all`` or ``empty``; several may be joined with ``+``."""
    out: list[CorpusEntry] = []
    for part in filter(None, spec.split("+")):
        if part.startswith("chains:"):
            out += chain_corpus(int(part.split(":", 1)[1]))
        elif part == "products":
            out += product_corpus(seed)
        elif part == "extra":
            out += extra_corpus()
        elif part == "all":
            out += chain_corpus(6) + extra_corpus() + product_corpus(seed)
        elif part == "empty":
            pass
        else:
            raise ValueError(f"unknown corpus {part!r}")
    return out


@dataclass
class CorpusReport:
    reports: list[TheoremReport] = field(default_factory=list)
    skipped: list[tuple[str, str, str]] = field(default_factory=list)
    errors: list[tuple[str, str, str]] = field(default_factory=list)
    graphs: dict[str, dict] = field(default_factory=dict)

    @property
    def disagreements(self) -> list[TheoremReport]:
        return [r for r in self.reports if not r.agree]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.reports:
            c = out.setdefault(r.theorem, {"agree": 0, "disagree": 0, "not_applicable": 0, "skipped": 0, "errors": 0})
            if not r.applicable:
                c["not_applicable"] += 1
            elif r.agree:
                c["agree"] += 1
            else:
                c["disagree"] += 1
        for bucket, key in ((self.skipped, "skipped"), (self.errors, "errors")):
            for _, theorem, _ in bucket:
                c = out.setdefault(theorem, {"agree": 0, "disagree": 0, "not_applicable": 0, "skipped": 0, "errors": 0})
                c[key] += 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict[str, Any]:
        return {
            "counts": self.counts(),
            "disagreements": [
                {**r.to_json(), "graph_file": self.graphs.get(r.graph)} for r in self.disagreements
            ],
            "errors": [list(e) for e in self.errors],
            "skipped": [list(s) for s in self.skipped],
        }


_THEOREM_NAMES = {
    verify_idim0_components: "idim0-components",
    verify_connectivity: "connectivity",
    verify_elementary_characterization: "elementary-daisy",
    verify_face_theta_bijection: "face-theta-bijection",
    verify_fries_structure: "fries-structure",
    verify_general_characterization: "general-daisy",
    verify_outerplanarization: "outerplanarization",
}


def run_corpus(corpus: str | Iterable[CorpusEntry], limit: int | None = None, seed: int = 0) -> CorpusReport:
    """Run every applicable verifier on every corpus entry.

    Failed hypotheses (K2, non-elementary, no perfect matching) are recorded
    as skipped; other errors such as LimitExceeded are collected per graph.
    """
    from .io import to_dict

    entries = build_corpus(corpus, seed) if isinstance(corpus, str) else list(corpus)
    out = CorpusReport()
    for entry in entries:
        if entry.graph is None:
            try:
                out.reports.append(verify_product_daisy(entry.factors, entry.name))
            except ReskitError as exc:
                out.errors.append((entry.name, "cartesian-daisy", f"{type(exc).__name__}: {exc}"))
            continue
        out.graphs[entry.name] = to_dict(entry.graph)
        if not has_perfect_matching(entry.graph):
            for fn in PLANE_VERIFIERS:
                out.skipped.append((entry.name, _THEOREM_NAMES[fn], "no perfect matching"))
            continue
        for fn in PLANE_VERIFIERS:
            try:
                out.reports.append(fn(entry.graph, entry.name, limit))
            except (IsK2, NotElementary, NoPerfectMatching) as exc:
                out.skipped.append((entry.name, _THEOREM_NAMES[fn], f"{type(exc).__name__}: {exc}"))
            except (LimitExceeded, ReskitError) as exc:
                out.errors.append((entry.name, _THEOREM_NAMES[fn], f"{type(exc).__name__}: {exc}"))
    return out

