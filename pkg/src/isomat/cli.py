"""
Command-line front end.  Every subcommand prints one JSON document.

Exit status: 0 on success, 1 on a domain error (bad graph, limit exceeded,
failed verification), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import networkx as nx

from .delta_cycles import delta_matroid, transverse_cycles, zeta
from .equivalence import ALIASES, KINDS, MoveSet, equivalent, orbit
from .graphs import LoopedSimpleGraph, graph_from_code
from .isotropic import CHI, PHI, PSI, GroundElement, SubTransversal, ias
from .matroid import components, loops, parallel_classes
from .polynomials import (
    MultiPoly,
    ParamAssignment,
    interlace_q,
    transversal_section,
    vertex_nullity_specialization,
)
from .triangulations import enumerate_triangulations
from .verify import SUITES, run_suite

FORMATS = ("json", "graph6", "g6loops")


class GraphParseError(ValueError):
    pass


def _label(e: GroundElement) -> str:
    return f"{e.vertex}_{e.flavor.ascii}"


def _labels(elems) -> list[str]:
    return [_label(e) for e in sorted(elems)]


def _subtransversal_labels(s: SubTransversal) -> list[str]:
    return _labels(s.elements())


# -- parsing -------------------------------------------------------------------

def _parse_json(text: str) -> LoopedSimpleGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("n"), int) or doc["n"] < 0:
        raise GraphParseError('expected an object with a nonnegative integer "n"')
    n = doc["n"]
    edges, loops = doc.get("edges", []), doc.get("loops", [])
    if not isinstance(edges, list) or not isinstance(loops, list):
        raise GraphParseError('"edges" and "loops" must be lists')
    seen = set()
    for e in edges:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphParseError(f"malformed edge {e!r}")
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"edge {e} references a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphParseError(f"edge {e} joins a vertex to itself; use \"loops\"")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {e}")
        seen.add(key)
    for v in loops:
        if not isinstance(v, int) or not 0 <= v < n:
            raise GraphParseError(f"loop vertex {v!r} outside 0..{n - 1}")
    if len(set(loops)) != len(loops):
        raise GraphParseError("duplicate loop vertex")
    return LoopedSimpleGraph.from_edges(n, sorted(seen), loops)


def _parse_graph6(text: str) -> LoopedSimpleGraph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    try:
        h = nx.from_graph6_bytes(text.encode("ascii"))
    except (ValueError, IndexError, nx.NetworkXError, UnicodeEncodeError) as exc:
        raise GraphParseError(f"bad graph6 string {text!r}: {exc}") from None
    return LoopedSimpleGraph.from_edges(h.number_of_nodes(), h.edges())


def _parse_g6loops(text: str) -> LoopedSimpleGraph:
    text = text.strip()
    body, sep, tail = text.partition(";L=")
    if not sep:
        raise GraphParseError('expected "<graph6>;L=<bits>"')
    g = _parse_graph6(body)
    if len(tail) != g.n or set(tail) - {"0", "1"}:
        raise GraphParseError(f"loop string must be {g.n} characters of 0/1, got {tail!r}")
    return LoopedSimpleGraph(g.n, g.adj, sum(1 << i for i, c in enumerate(tail) if c == "1"))


def parse_graph(text: str, fmt: str = "json") -> LoopedSimpleGraph:
    if fmt == "json":
        return _parse_json(text)
    if fmt == "graph6":
        return _parse_graph6(text)
    if fmt == "g6loops":
        return _parse_g6loops(text)
    raise ValueError(f"unknown format {fmt!r}")


def graph_document(g: LoopedSimpleGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()], "loops": g.looped_vertices()}


def emit_graph(g: LoopedSimpleGraph, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(graph_document(g), sort_keys=True)
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    g6 = nx.to_graph6_bytes(h, header=False).decode("ascii").strip()
    if fmt == "graph6":
        if g.loops:
            raise ValueError("graph6 cannot carry loops; use g6loops")
        return g6
    if fmt == "g6loops":
        return g6 + ";L=" + "".join("1" if g.is_looped(v) else "0" for v in range(g.n))
    raise ValueError(f"unknown format {fmt!r}")


def _read_graph(path: str, fmt: str) -> LoopedSimpleGraph:
    if path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise GraphParseError(f"{path}: {exc.strerror}") from None
    try:
        return parse_graph(text, fmt)
    except GraphParseError as exc:
        raise GraphParseError(f"{path}: {exc}") from None


# -- commands ------------------------------------------------------------------

def _limit(args) -> dict:
    return {"limit": args.limit_n} if args.limit_n is not None else {}


def cmd_info(args) -> dict:
    g = _read_graph(args.graph, args.format)
    m = ias(g)
    return {
        "n": g.n,
        "graph": graph_document(g),
        "rank": m.rank,
        "components": sorted((_labels(c) for c in components(m)), key=lambda c: (len(c), c)),
        "loops": _labels(loops(m)),
        "parallel_classes": sorted(_labels(c) for c in parallel_classes(m) if len(c) > 1),
    }


def cmd_interlace(args) -> dict:
    g = _read_graph(args.graph, args.format)
    return {
        "q": str(interlace_q(g, **_limit(args))),
        "vertex_nullity": str(vertex_nullity_specialization(g, **_limit(args))),
    }


SECTION_PRESETS = {
    "ones": {PHI: 1, CHI: 1, PSI: 1},
    "interlace": {PHI: 1, CHI: MultiPoly.var("x") - 1, PSI: 0},
    "no-psi": {PHI: 1, CHI: 1, PSI: 0},
}


def cmd_section(args) -> dict:
    g = _read_graph(args.graph, args.format)
    p = ParamAssignment.by_flavor(g.n, SECTION_PRESETS[args.preset])
    return {"preset": args.preset, "section": str(transversal_section(g, p, **_limit(args)))}


def cmd_delta(args) -> dict:
    g = _read_graph(args.graph, args.format)
    d = delta_matroid(g, **_limit(args))
    return {"n": g.n, "feasible": d.sorted_sets()}


def cmd_cycles(args) -> dict:
    g = _read_graph(args.graph, args.format)
    cyc = transverse_cycles(g, **_limit(args))
    return {
        "count": len(cyc),
        "cycles": [_subtransversal_labels(s) for s in cyc],
        "zeta": {str(v): _subtransversal_labels(zeta(g, v, cyc)) for v in range(g.n)},
    }


def cmd_orbit(args) -> dict:
    g = _read_graph(args.graph, args.format)
    moves = MoveSet(args.moves)
    codes = sorted(orbit(g, moves, **_limit(args)))
    return {
        "moves": moves.kind,
        "size": len(codes),
        "representatives": [graph_document(graph_from_code(c)) for c in codes],
    }


def cmd_equiv(args) -> dict:
    g1 = _read_graph(args.graph_a, args.format)
    g2 = _read_graph(args.graph_b, args.format)
    moves = MoveSet(args.moves)
    return {"moves": moves.kind, "equivalent": equivalent(g1, g2, moves, **_limit(args))}


def cmd_triangulations(args) -> dict:
    g = _read_graph(args.graph, args.format)
    tris = enumerate_triangulations(g, **_limit(args))
    out = [sorted(_labels(c) for c in t.cells) for t in tris]
    return {"count": len(out), "triangulations": sorted(out)}


def cmd_verify(args) -> dict:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(name, args.max_n, args.seed) for name in names]
    if len(reports) == 1:
        return reports[0].as_dict()
    return {
        "ok": all(r.ok for r in reports),
        "cases": sum(r.cases for r in reports),
        "suites": [r.as_dict() for r in reports],
    }


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="graph input format")
    common.add_argument("--pretty", action="store_true", help="indented output")
    common.add_argument("--seed", type=int, default=0, help="seed for random-graph suites")
    common.add_argument("--limit-n", type=int, default=None, help="override the size limit of the computation")

    parser = argparse.ArgumentParser(prog="isomat", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("graph", help="graph file, or - for stdin")
        p.set_defaults(func=func)
        return p

    graph_cmd("info", cmd_info, "size, matroid components, loops and parallel classes")
    graph_cmd("interlace", cmd_interlace, "two-variable interlace polynomial and its x=2 specialization")
    sec = graph_cmd("section", cmd_section, "transversal section of the parametrized rank polynomial")
    sec.add_argument("--preset", choices=sorted(SECTION_PRESETS), default="ones")
    graph_cmd("delta", cmd_delta, "feasible sets of the delta-matroid")
    graph_cmd("cycles", cmd_cycles, "transverse cycles and each zeta_v")
    orb = graph_cmd("orbit", cmd_orbit, "equivalence class under a move set")
    move_choices = sorted(set(KINDS) | set(ALIASES))
    orb.add_argument("--moves", choices=move_choices, required=True)
    eq = sub.add_parser("equiv", parents=[common], help="decide equivalence of two graphs")
    eq.add_argument("--moves", choices=move_choices, required=True)
    eq.add_argument("graph_a")
    eq.add_argument("graph_b")
    eq.set_defaults(func=cmd_equiv)
    graph_cmd("triangulations", cmd_triangulations, "all triangulations of W(G)")
    ver = sub.add_parser("verify", parents=[common], help="run a theorem-verification suite")
    ver.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    ver.add_argument("--max-n", type=int, default=None)
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"error": msg}, sort_keys=True), file=sys.stderr)
        return 1
    print(json.dumps(result, sort_keys=True, indent=2 if args.pretty else None, ensure_ascii=False))
    if args.command == "verify" and not result["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
