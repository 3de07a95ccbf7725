"""Command-line entry point.

Exit status: 0 all checks pass, 1 a check failed, 2 usage error,
3 budget or size limit reached (inconclusive).
"""

from __future__ import annotations

import argparse
import sys
import time
from datetime import datetime, timezone
from typing import Any, Callable

from backforth import analysis, construction, flows, formats
from backforth.construction import GraphParams
from backforth.formats import FormatError, render_vertex
from backforth.graphcore import ResourceLimitError, Vertex, validate_path
from backforth.witnesses import Direction, WitnessSpec, lambda1_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3

ANCHORS = {
    "dv": "quotient-k-edge-connected",
    "isomorphism": "self-similarity",
    "cuts": "no-pair-cut-structure",
    "robustness": "deletion-inherits-connectivity",
    "no-pair": "no-disjoint-back-and-forth",
    "witness": "connectivity-witnesses",
    "certify": "k-edge-connected",
}


class UsageError(Exception):
    pass


def _row(check: str, anchor: str, params: dict, outcome: bool | str, **details: Any) -> dict:
    if isinstance(outcome, bool):
        outcome = "pass" if outcome else "fail"
    return {"check": check, "anchor": anchor, "parameters": params, "outcome": outcome, "details": details}


def _report(command: str, parameters: dict, rows: list[dict], started: float) -> dict:
    counts = {o: sum(r["outcome"] == o for r in rows) for o in ("pass", "fail", "inconclusive")}
    status = "fail" if counts["fail"] else "inconclusive" if counts["inconclusive"] else "pass"
    return {
        "format_version": formats.FORMAT_VERSION,
        "kind": "report",
        "command": command,
        "parameters": parameters,
        "rows": rows,
        "summary": counts,
        "status": status,
        "timestamp": {
            "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "elapsed_s": round(time.perf_counter() - started, 3),
        },
    }


def _status(report: dict) -> int:
    return {"pass": EXIT_OK, "fail": EXIT_FAIL, "inconclusive": EXIT_LIMIT}[report["status"]]


def _emit(doc: dict, out: str | None) -> None:
    text = formats.dumps(doc)
    if out:
        formats.write_text(out, text)
    else:
        sys.stdout.write(text)


def _vertex(name: str, k: int | None) -> Vertex:
    try:
        return formats.parse_vertex(name, k)
    except FormatError as exc:
        raise UsageError(str(exc)) from exc


# -- verify ------------------------------------------------------------------


def verify_dv(params: GraphParams, args) -> list[dict]:
    anchor = ANCHORS["dv"]
    k = params.k
    q = construction.quotient_dv(params)
    p = {"k": k}
    rows = [
        _row("vertex_count", anchor, p, len(q) == 2 * k + 2, value=len(q), expected=2 * k + 2),
        _row("edge_count", anchor, p, len(q.edges) == params.gadget_size, value=len(q.edges), expected=params.gadget_size),
        _row("no_loops", anchor, p, not q.has_loops()),
    ]
    chain = [Vertex("s")] + [Vertex("v", (i,)) for i in params.I] + [Vertex("t")]
    present = all(q.multiplicity(a, b) >= 1 for a, b in zip(chain, chain[1:]))
    rows.append(_row("simple_chain_present", anchor, p, present, chain=[render_vertex(v) for v in chain]))
    lam = flows.global_edge_connectivity(q)
    rows.append(_row("edge_connectivity_maxflow", anchor, p, lam == k, value=lam, expected=k))
    if args.budget is not None or k <= 3:
        budget = args.budget or flows.DEFAULT_BRUTEFORCE_BUDGET
        try:
            brute = flows.global_bruteforce(q, k + 1, budget)
            rows.append(_row("edge_connectivity_bruteforce", anchor, dict(p, bound=k + 1), brute == k, value=brute, expected=k))
        except ResourceLimitError as exc:
            rows.append(_row("edge_connectivity_bruteforce", anchor, dict(p, bound=k + 1), "inconclusive", reason=str(exc)))
    return rows


def verify_isomorphism(params: GraphParams, args) -> list[dict]:
    depth = args.depth or 2
    rows = []
    for nu in construction.addresses(params, 2):
        r = construction.verify_isomorphism(params, nu, depth)
        rows.append(_row(
            "gadget_image", ANCHORS["isomorphism"], {"k": params.k, "nu": list(nu), "depth": depth},
            r.passed, gadgets_compared=r.gadgets_compared, span_checked=r.span_checked, mismatches=r.mismatches,
        ))
    return rows


def verify_cuts(params: GraphParams, args) -> list[dict]:
    depth = args.depth or 2
    rows = []
    for i0 in params.I_e:
        r = analysis.verify_cut_structure(params, depth, i0)
        for c in r.claims:
            rows.append(_row(
                c.name, ANCHORS["cuts"], {"k": params.k, "depth": depth, "i0": i0}, c.passed,
                detail=c.detail, offending=[formats.edge_to_dict(e) for e in c.offending],
            ))
    return rows


def verify_robustness(params: GraphParams, args) -> list[dict]:
    rows = []
    for l in range(params.k):
        r = analysis.robustness_quotient(params, l)
        rows.append(_row(
            "quotient_deletions", ANCHORS["robustness"], {"k": params.k, "max_deleted": l, "mode": r.mode},
            r.passed, cases=r.cases, connected=r.connected,
            failures=[[formats.edge_to_dict(e) for e in c] for c in r.failures[:10]],
        ))
    return rows


def verify_no_pair(params: GraphParams, args) -> list[dict]:
    depth = args.depth or 2
    budget = args.budget or analysis.DEFAULT_PAIR_BUDGET
    rows = []
    for r in analysis.verify_no_pair_suite(params, depth, budget):
        outcome: bool | str = r.passed
        if r.outcome == analysis.Outcome.BUDGET_EXHAUSTED:
            outcome = "inconclusive"
        rows.append(_row(
            f"pair_search_{r.graph}", ANCHORS["no-pair"],
            {"k": params.k, "depth": r.depth, "budget": budget}, outcome,
            result=r.outcome.value, expected=r.expected.value, explored=r.explored, paths_tested=r.paths_tested,
        ))
    return rows


VERIFIERS: dict[str, Callable[[GraphParams, Any], list[dict]]] = {
    "dv": verify_dv,
    "isomorphism": verify_isomorphism,
    "cuts": verify_cuts,
    "robustness": verify_robustness,
    "no-pair": verify_no_pair,
}


# -- commands ----------------------------------------------------------------


def cmd_build(args) -> int:
    params = GraphParams(args.k)
    g = construction.truncation(params, args.depth, max_edges=args.max_edges)
    formats.write_graph(args.out, g)
    if args.dot:
        formats.write_text(args.dot, formats.to_dot(g))
    print(f"wrote {args.out}: {len(g)} vertices, {len(g.edges)} edges")
    return EXIT_OK


def cmd_lambda(args) -> int:
    g = formats.read_graph(args.graph)
    u, v = _vertex(args.source, g.k), _vertex(args.target, g.k)
    for x in (u, v):
        if x not in g:
            raise UsageError(f"vertex {render_vertex(x)} is not in {args.graph}")
    if u == v:
        raise UsageError("--from and --to must differ")
    pairs = [(u, v), (v, u)] if args.both else [(u, v)]
    values = []
    for a, b in pairs:
        cut = flows.min_cut(g, a, b)
        values.append(len(cut.crossing))
        edges = ", ".join(
            f"({render_vertex(g.ends[e][0])},{render_vertex(g.ends[e][1])})#{formats.render_edge_id(e)}"
            for e in cut.crossing
        )
        print(f"lambda({render_vertex(a)} -> {render_vertex(b)}) = {len(cut.crossing)}")
        print(f"  min cut: {{{edges}}}")
        print(f"  source side: {{{', '.join(render_vertex(x) for x in sorted(cut.side, key=g.vertices.index))}}}")
    if args.both:
        print(f"lambda{{{render_vertex(u)}, {render_vertex(v)}}} = {min(values)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    started = time.perf_counter()
    params = GraphParams(args.k)
    rows = VERIFIERS[args.what](params, args)
    parameters = {"k": args.k, "depth": args.depth, "budget": args.budget}
    report = _report(f"verify {args.what}", parameters, rows, started)
    _emit(report, args.out)
    if args.out:
        s = report["summary"]
        print(f"verify {args.what}: {report['status']} ({s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive)")
    return _status(report)


def cmd_witness(args) -> int:
    started = time.perf_counter()
    params = GraphParams(args.k)
    target = _vertex(args.target, args.k)
    if target.role not in ("s", "t"):
        raise UsageError("witness targets are s/t vertices")
    res = lambda1_witness(params, WitnessSpec(target, Direction(args.direction)))
    g = construction.truncation(params, res.required_depth)
    rows = []
    for label, w in (("from_s", res.from_s), ("to_s", res.to_s)):
        if w is None:
            continue
        rows.append(_row(
            f"witness_{label}", ANCHORS["witness"],
            {"k": args.k, "target": args.target, "depth": res.required_depth},
            validate_path(g, w), path=formats.witness_to_dict(w),
        ))
    doc = _report("witness", {"k": args.k, "target": args.target, "direction": args.direction}, rows, started)
    doc["required_depth"] = res.required_depth
    doc["ambiguous_steps"] = [[render_vertex(a), render_vertex(b)] for a, b in res.ambiguous]
    _emit(doc, args.out)
    return _status(doc)


def cmd_transform(args) -> int:
    g = formats.read_graph(args.inp)
    h = construction.subdivide_parallel(g)
    formats.write_graph(args.out, h)
    print(f"wrote {args.out}: {len(h)} vertices, {len(h.edges)} edges")
    return EXIT_OK


def cmd_certify(args) -> int:
    started = time.perf_counter()
    params = GraphParams(args.k)
    deleted = formats.read_edge_set(args.delete)
    u, v = _vertex(args.source, args.k), _vertex(args.target, args.k)
    p = {"k": args.k, "deleted": [formats.edge_to_dict(e) for e in deleted],
         "from": args.source, "to": args.target, "max_depth": args.max_depth}
    try:
        cert = analysis.certify_deleted_connectivity(params, deleted, u, v, args.max_depth)
    except ResourceLimitError as exc:
        row = _row("deleted_connectivity", ANCHORS["certify"], p, "inconclusive", reason=str(exc))
    else:
        ok = validate_path(construction.truncation(params, cert.depth), cert.witness) and not (
            set(cert.witness.edges) & set(deleted)
        )
        row = _row("deleted_connectivity", ANCHORS["certify"], p, ok, depth=cert.depth,
                   path=formats.witness_to_dict(cert.witness))
    doc = _report("certify", p, [row], started)
    _emit(doc, None)
    return _status(doc)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="backforth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a depth-limited truncation")
    b.add_argument("--k", type=int, required=True)
    b.add_argument("--depth", type=int, required=True)
    b.add_argument("--out", required=True)
    b.add_argument("--dot")
    b.add_argument("--max-edges", type=int, default=construction.DEFAULT_MAX_EDGES)
    b.set_defaults(func=cmd_build)

    lam = sub.add_parser("lambda", help="local edge-connectivity and min cut")
    lam.add_argument("--graph", required=True)
    lam.add_argument("--from", dest="source", required=True)
    lam.add_argument("--to", dest="target", required=True)
    lam.add_argument("--both", action="store_true")
    lam.set_defaults(func=cmd_lambda)

    ver = sub.add_parser("verify", help="run a structural check and write a report")
    ver.add_argument("what", choices=sorted(VERIFIERS))
    ver.add_argument("--k", type=int, required=True)
    ver.add_argument("--depth", type=int)
    ver.add_argument("--budget", type=int)
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)

    wit = sub.add_parser("witness", help="explicit s <-> target paths")
    wit.add_argument("--k", type=int, required=True)
    wit.add_argument("--target", required=True)
    wit.add_argument("--direction", choices=[d.value for d in Direction], default="both")
    wit.add_argument("--out")
    wit.set_defaults(func=cmd_witness)

    tr = sub.add_parser("transform", help="graph transforms")
    tr.add_argument("kind", choices=["simple"])
    tr.add_argument("--in", dest="inp", required=True)
    tr.add_argument("--out", required=True)
    tr.set_defaults(func=cmd_transform)

    cert = sub.add_parser("certify", help="path avoiding a deletion set of < k edges")
    cert.add_argument("--k", type=int, required=True)
    cert.add_argument("--delete", required=True)
    cert.add_argument("--from", dest="source", required=True)
    cert.add_argument("--to", dest="target", required=True)
    cert.add_argument("--max-depth", type=int, required=True)
    cert.set_defaults(func=cmd_certify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
