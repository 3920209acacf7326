"""Command-line front end.

Exit status: 0 success or true, 1 decided false, 2 usage error, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import congruence, contraction, gis, graphs, leavitt, lpa


class Decided(Exception):
    """Carries a report together with a false verdict."""

    def __init__(self, report):
        self.report = report


def _elem(g, text):
    return gis.parse_element(g, text)


def _classify(result):
    if isinstance(result, graphs.TreeWithSink):
        return {"kind": "TreeWithSink", "sink": result.sink, "max_depth": result.max_depth}
    if isinstance(result, graphs.UniqueCycleCover):
        return {"kind": "UniqueCycleCover", "cycle_length": result.cycle_length}
    return {"kind": type(result).__name__}


MAX_PAIR_TABLE = 8


def cmd_analyze(args):
    g = graphs.read_graph(args.graph)
    report = {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "sim_classes": [list(b) for b in graphs.sim_classes(g)],
        "sccs": [list(b) for b in graphs.strongly_connected_components(g)],
        "cycles": [str(c) for c in graphs.cycles_up_to_conjugacy(g)],
        "universal_rank": gis.universal_rank(g),
        "local_ranks": {v: gis.local_universal_rank(g, v) for v in g.vertices},
        "combinatorial": leavitt.is_combinatorial(g),
    }
    if graphs.is_connected(g):
        report["circle_immersion"] = _classify(graphs.classify_circle_immersion(g))
        report["brandt"] = str(leavitt.classify_brandt(g))
    else:
        report["circle_immersion"] = {"kind": "disconnected"}
    # the pair table grows like 2^k in the number k of out-degree-1 vertices
    if sum(1 for v in g.vertices if len(g.out_edges(v)) == 1) <= MAX_PAIR_TABLE:
        report["congruence_pairs"] = cmd_congruences(argparse.Namespace(graph=g, max_f=1))["pairs"]
    return report


def _text_analyze(r):
    lines = [f"vertices: {r['vertices']}", f"edges: {r['edges']}"]
    lines.append(f"~-classes ({len(r['sim_classes'])}): " + " ".join("{" + ",".join(b) + "}" for b in r["sim_classes"]))
    lines.append(f"SCCs ({len(r['sccs'])}): " + " ".join("{" + ",".join(b) + "}" for b in r["sccs"]))
    lines.append("cycles: " + (", ".join(r["cycles"]) or "none"))
    lines.append(f"universal rank: {r['universal_rank']}")
    lines.append("local ranks: " + " ".join(f"{v}={k}" for v, k in r["local_ranks"].items()))
    ci = dict(r["circle_immersion"])
    kind = ci.pop("kind")
    lines.append("circle immersion: " + kind + "".join(f" {k}={v}" for k, v in ci.items()))
    if "brandt" in r:
        lines.append(f"brandt: {r['brandt']}")
    lines.append(f"LI combinatorial: {'yes' if r['combinatorial'] else 'no'}")
    if "congruence_pairs" in r:
        lines.append(f"congruence pairs (f <= 1): {len(r['congruence_pairs'])}")
        lines.append(_text_congruences({"pairs": r["congruence_pairs"]}))
    else:
        lines.append("congruence pairs: skipped (too many out-degree-1 vertices)")
    return "\n".join(lines)


def cmd_mul(args):
    g = graphs.read_graph(args.graph)
    x, y = _elem(g, args.x), _elem(g, args.y)
    z = leavitt.li_multiply(g, x, y) if args.leavitt else gis.gis_multiply(x, y)
    return {"result": gis.format_element(z)}


def cmd_reduce(args):
    g = graphs.read_graph(args.graph)
    return {"result": gis.format_element(leavitt.li_reduce(g, _elem(g, args.x)))}


def cmd_green(args):
    g = graphs.read_graph(args.graph)
    ok = leavitt.green_relation(g, args.relation, _elem(g, args.x), _elem(g, args.y))
    report = {"relation": args.relation, "result": ok}
    if not ok:
        raise Decided(report)
    return report


def cmd_brandt(args):
    g = graphs.read_graph(args.graph)
    res = leavitt.classify_brandt(g)
    report = {"result": str(res)}
    if isinstance(res, leavitt.NotCircleImmersible):
        raise Decided(report)
    return report


def cmd_iso(args):
    g, d = graphs.read_graph(args.graph1), graphs.read_graph(args.graph2)
    w = contraction.li_isomorphic(g, d)
    if w is None:
        raise Decided({"result": "not-isomorphic"})
    report = {"result": "isomorphic"}
    if args.witness:
        report["psi"] = dict(w.psi)
        report["edges"] = {e: gis.format_element(x) for e, x in contraction.edge_images(w).items()}
    return report


def _text_iso(r):
    lines = [r["result"]]
    if "psi" in r:
        lines += [f"{v} -> {u}" for v, u in r["psi"].items()]
        lines += [f"{e} -> {x}" for e, x in r["edges"].items()]
    return "\n".join(lines)


def cmd_congruences(args):
    g = args.graph if isinstance(args.graph, graphs.Graph) else graphs.read_graph(args.graph)
    rows = []
    for pair in congruence.enumerate_pairs(g, args.max_f):
        rows.append({"pair": str(pair), "gis_quotient": congruence.preserves_gis(g, pair)})
    return {"pairs": rows}


def _text_congruences(r):
    return "\n".join(f"{row['pair']}  gis-quotient: {'yes' if row['gis_quotient'] else 'no'}" for row in r["pairs"])


def cmd_universal(args):
    g = graphs.read_graph(args.graph)
    verts = [args.vertex] if args.vertex else list(g.vertices)
    return {"universal_rank": gis.universal_rank(g), "local_ranks": {v: gis.local_universal_rank(g, v) for v in verts}}


def _text_universal(r):
    return "\n".join([f"universal rank: {r['universal_rank']}"] + [f"local rank at {v}: {k}" for v, k in r["local_ranks"].items()])


def _gamma(g, text):
    gamma = lpa.default_gamma(g)
    for item in (text or "").split(","):
        if item.strip():
            v, _, e = item.partition("=")
            gamma[v.strip()] = e.strip()
    lpa.check_gamma(g, gamma)
    return gamma


def cmd_lpa(args):
    g = graphs.read_graph(args.graph)
    if args.lpa_cmd == "reduce":
        gamma = _gamma(g, args.gamma)
        x = lpa.to_basis(g, gamma, _elem(g, args.x))
        return {"result": lpa.format_algebra(x), "gamma": gamma}
    try:
        return {"result": lpa.dimension_if_acyclic(g)}
    except graphs.GraphError:
        return {"result": "infinite (cyclic)"}


def cmd_morphism(args):
    m = graphs.load_morphism(_read(args.file), base_dir=os.path.dirname(os.path.abspath(args.file)))
    kind = graphs.check_morphism(m)
    report = {"kind": kind.value}
    if args.lift is not None:
        if args.at is None:
            raise graphs.GraphError("--lift needs --at")
        p = graphs.parse_path(m.codomain, args.lift)
        if kind is graphs.MorphismKind.DIRECTED_COVER:
            report["lift"] = str(graphs.lift_path(m, p, args.at))
        else:
            prefix, lift = graphs.lift_max_prefix(m, p, args.at)
            report["lifted_prefix"] = str(prefix)
            report["lift"] = str(lift)
    if args.circuit is not None:
        v, n, c = graphs.lift_circuit_power(m, graphs.parse_path(m.codomain, args.circuit))
        report["circuit"] = {"vertex": v, "period": n, "lift": str(c)}
    if kind is graphs.MorphismKind.NOT_MORPHISM:
        raise Decided(report)
    return report


def _read(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _text_default(r):
    if set(r) == {"result"}:
        v = r["result"]
        return ("true" if v else "false") if isinstance(v, bool) else str(v)
    lines = []
    for k, v in r.items():
        if isinstance(v, dict):
            v = " ".join(f"{a}={b}" for a, b in v.items())
        elif isinstance(v, bool):
            v = "true" if v else "false"
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def _text_green(r):
    return "true" if r["result"] else "false"


TEXT = {
    "analyze": _text_analyze,
    "iso": _text_iso,
    "congruences": _text_congruences,
    "universal": _text_universal,
    "green": _text_green,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="graph-inverse", description="Graph inverse semigroups and Leavitt path algebras.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("analyze", help="classes, components, cycles and ranks of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("mul", help="multiply two elements")
    p.add_argument("graph")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--leavitt", action="store_true", help="multiply in LI(G) instead of I(G)")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("reduce", help="Leavitt normal form of an element")
    p.add_argument("graph")
    p.add_argument("x")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("green", help="decide a Green relation in LI(G)")
    p.add_argument("graph")
    p.add_argument("relation", choices=("R", "L", "D", "J", "H"))
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("brandt", help="Brandt type of LI(G) for circle-immersible graphs")
    p.add_argument("graph")
    p.set_defaults(func=cmd_brandt)

    p = sub.add_parser("iso", help="decide LI(G1) = LI(G2)")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("congruences", help="list congruence pairs")
    p.add_argument("graph")
    p.add_argument("--max-f", type=int, default=1, dest="max_f")
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("universal", help="universal group ranks")
    p.add_argument("graph")
    p.add_argument("--vertex")
    p.set_defaults(func=cmd_universal)

    p = sub.add_parser("lpa", help="Leavitt path algebra")
    lsub = p.add_subparsers(dest="lpa_cmd", required=True)
    q = lsub.add_parser("reduce", help="expand an element in the natural basis")
    q.add_argument("graph")
    q.add_argument("x")
    q.add_argument("--gamma", help="special edges as v=e,w=f (default: first out-edge)")
    q = lsub.add_parser("dim", help="dimension of the algebra of an acyclic graph")
    q.add_argument("graph")
    p.set_defaults(func=cmd_lpa)

    p = sub.add_parser("morphism", help="cover and immersion checks, path lifting")
    p.add_argument("file")
    p.add_argument("--lift", help="codomain path to lift, e.g. a.b or @v")
    p.add_argument("--at", help="domain vertex to lift at")
    p.add_argument("--circuit", help="codomain circuit whose powers are lifted")
    p.set_defaults(func=cmd_morphism)
    return ap


def _emit(args, report):
    if args.format == "json":
        print(json.dumps(report, sort_keys=False))
    else:
        print(TEXT.get(args.cmd, _text_default)(report))


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        report = args.func(args)
    except Decided as d:
        _emit(args, d.report)
        return 1
    except (graphs.GraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    _emit(args, report)
    return 0


if __name__ == "__main__":
    sys.exit(main())
