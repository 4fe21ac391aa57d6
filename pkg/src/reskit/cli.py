"""Command-line interface: ``reskit <subcommand> ...``.

Exit codes: 0 success, 1 verification disagreement, 2 bad input,
3 matching enumeration limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import generators, io
from .cube import recognize_daisy
from .errors import Disconnected, LimitExceeded, NotOuterplane, NotTwoConnected, ReskitError
from .matching import fries_number
from .plane_graph import adjacent_triples, classify, handles, is_peripherally_2_colorable
from .resonance import build_resonance_graph
from .theorems import run_corpus

log = logging.getLogger("reskit")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def cmd_analyze(args) -> int:
    g = io.load(args.file)
    out: dict = {
        "vertices": g.num_vertices,
        "edges": g.num_edges,
        "faces": [
            {
                "id": f.id,
                "infinite": f.infinite,
                "length": f.length,
                "edges": list(f.edge_sequence),
                "vertices": list(f.vertices),
            }
            for f in g.faces
        ],
    }
    try:
        cls = classify(g)
        out["classification"] = {
            "exterior_vertices": sorted(cls.exterior_vertices),
            "interior_vertices": sorted(cls.interior_vertices),
            "exterior_edges": sorted(cls.exterior_edges),
            "interior_edges": sorted(cls.interior_edges),
            "outerplane": cls.is_outerplane,
        }
        out["handles"] = [
            {"path": list(h.path), "edges": list(h.edges), "kind": h.kind.value, "length": h.length, "closed": h.closed}
            for h in handles(g)
        ]
    except Disconnected as exc:
        out["classification"] = out["handles"] = None
        out["note"] = str(exc)
    try:
        out["triples"] = [
            {
                "faces": list(t.faces),
                "shared_edges": list(t.shared_edges),
                "line_distance": t.line_distance,
                "classification": t.classification,
            }
            for t in adjacent_triples(g)
        ]
    except (NotTwoConnected, NotOuterplane, Disconnected) as exc:
        out["triples"] = None
        out["triples_note"] = str(exc)
    try:
        pc = is_peripherally_2_colorable(g)
        out["peripherally_2_colorable"] = {"value": pc.value, "reason": pc.reason}
    except ReskitError as exc:
        out["peripherally_2_colorable"] = {"value": False, "reason": f"{type(exc).__name__}: {exc}"}
    _emit(out)
    return 0


def cmd_resonance(args) -> int:
    g = io.load(args.file)
    r = build_resonance_graph(g, args.limit)
    print(f"vertices: {r.num_vertices}")
    print(f"edges: {r.num_edges}")
    if args.dot:
        cert, _ = recognize_daisy(r.to_simple())
        with open(args.dot, "w") as fh:
            fh.write(io.export_dot(r, labels=True, certificate=cert, name="R"))
    return 0


def cmd_fries(args) -> int:
    g = io.load(args.file)
    value, witness = fries_number(g, args.limit)
    print(value)
    print("witness: " + " ".join(str(e) for e in witness.edges))
    return 0


def cmd_daisy(args) -> int:
    g = io.load(args.file)
    r = build_resonance_graph(g, args.limit)
    cert, reason = recognize_daisy(r.to_simple())
    if cert is None:
        print(f"not a daisy cube: {reason}")
    else:
        _emit(cert.to_json())
    return 0


def cmd_verify(args) -> int:
    report = run_corpus(args.corpus, limit=args.limit, seed=args.seed)
    for theorem, c in report.counts().items():
        print(
            f"{theorem}: agree={c['agree']} disagree={c['disagree']} "
            f"not_applicable={c['not_applicable']} skipped={c['skipped']} errors={c['errors']}"
        )
    for name, theorem, msg in report.errors:
        print(f"error: {name} {theorem}: {msg}", file=sys.stderr)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json(), fh, sort_keys=True, indent=2)
    if not report.ok:
        for r in report.disagreements:
            print(json.dumps({**r.to_json(), "graph_file": report.graphs.get(r.graph)}, sort_keys=True), file=sys.stderr)
        print(f"{len(report.disagreements)} disagreement(s)")
        return 1
    if any(msg.startswith("LimitExceeded") for _, _, msg in report.errors):
        return 3
    print("no disagreements")
    return 0


def cmd_generate(args) -> int:
    g = generators.generate(args.family, args.params)
    data = io.serialize(g)
    if args.output == "-":
        sys.stdout.write(data.decode())
    else:
        with open(args.output, "wb") as fh:
            fh.write(data)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reskit", description="Resonance graphs of plane bipartite graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    limit = argparse.ArgumentParser(add_help=False)
    limit.add_argument("--limit", type=int, default=None, help="cap on perfect matchings (default: RESKIT_LIMIT or 2**20)")

    a = sub.add_parser("analyze", help="faces, handles, triples and peripheral coloring")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("resonance", parents=[limit], help="build the resonance graph")
    r.add_argument("file")
    r.add_argument("--dot", metavar="OUT", help="write the resonance graph as DOT")
    r.set_defaults(func=cmd_resonance)

    f = sub.add_parser("fries", parents=[limit], help="Fries number with a witness matching")
    f.add_argument("file")
    f.set_defaults(func=cmd_fries)

    d = sub.add_parser("daisy", parents=[limit], help="daisy-cube recognition of the resonance graph")
    d.add_argument("file")
    d.set_defaults(func=cmd_daisy)

    v = sub.add_parser("verify", parents=[limit], help="run the theorem checks over a corpus")
    v.add_argument("--corpus", default="chains:6", help="chains:N, products, extra, all (join with +)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="OUT", help="write the full report as JSON")
    v.set_defaults(func=cmd_verify)

    gen = sub.add_parser("generate", help="write a generated graph file")
    gen.add_argument("family", choices=generators.FAMILIES)
    gen.add_argument("params", nargs="*")
    gen.add_argument("-o", "--output", required=True, help="output path, or - for stdout")
    gen.set_defaults(func=cmd_generate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except LimitExceeded as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return 3
    except (ReskitError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
