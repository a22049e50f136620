"""Command-line front end.

Every subcommand prints one JSON run report on stdout; short human
summaries and error messages go to stderr.

Exit codes: 0 success, 1 domain or precondition error, 2 search budget
exceeded, 3 usage error, 4 a verification suite reported failures.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from .budget import DEFAULT_NODES, EXTENDED_NODES, Budget
from .cliques import CliquePartition, enumerate_partitions, is_clique_partition, minimum_partition, minimum_partitions
from .errors import BudgetExceeded, DomainError, EcpError, ExclusionError
from .formats import FORMATS, format_for_path, from_graph6, parse_graph, serialize_graph
from .graphs import Graph, Multigraph, line_graph
from .line_graphs import (
    PLANE_RULES,
    canonical_partition,
    cp_linegraph_formula,
    detect_exclusions,
    find_wings,
    leaf_stats,
    omega_a_linegraph_formula,
    omega_f_linegraph_formula,
)
from .linear_spaces import delete_point, enumerate_linear_spaces, projective_plane
from .representations import (
    RepKind,
    SetFamily,
    classify,
    enumerate_min_reps,
    omega_exact,
    partition_from_rep,
    rep_from_partition,
)
from .verify import SUITES, Options, SuiteReport, run_suite

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --------------------------------------------------------------------------
# input


def _read_input(args) -> bytes | None:
    if getattr(args, "stdin", False):
        return sys.stdin.buffer.read()
    if getattr(args, "input", None):
        with open(args.input, "rb") as fh:
            return fh.read()
    return None


def _sniff(data: bytes) -> str:
    text = data.lstrip()
    if text.startswith(b"{"):
        return "json"
    if text.startswith(b">>graph6<<"):
        return "graph6"
    first = next((l for l in text.splitlines() if l.strip() and not l.startswith(b"#")), b"")
    if first.startswith(b"n=") or b" " in first.strip():
        return "edgelist"
    return "graph6"


def _load_graph(args, data: bytes | None) -> Graph:
    if data is None:
        raise UsageError("a graph is required: pass --input PATH or --stdin")
    fmt = args.format or (format_for_path(args.input) if args.input else None) or _sniff(data)
    return parse_graph(data, fmt)


def _target(args, g: Graph) -> Graph:
    return line_graph(g)[0] if getattr(args, "line_graph", False) else g


def _partition_json(p: CliquePartition) -> list[list[int]]:
    return [list(c) for c in p.cliques]


# --------------------------------------------------------------------------
# subcommands (thin adapters over the library)


def cmd_cp(args, data, budget):
    h = _target(args, _load_graph(args, data))
    if args.enumerate:
        mins = minimum_partitions(h, args.nontrivial, args.proper, budget)
        return {"cp": len(mins[0]), "count": len(mins), "partitions": [_partition_json(p) for p in mins]}
    p = minimum_partition(h, args.nontrivial, args.proper, budget)
    return {"cp": len(p), "partition": _partition_json(p)}


def cmd_enum_partitions(args, data, budget):
    h = _target(args, _load_graph(args, data))
    max_size = args.max_size or max(1, h.num_edges + h.n)
    parts = list(enumerate_partitions(h, max_size, args.nontrivial, args.proper, budget))
    return {"count": len(parts), "partitions": [_partition_json(p) for p in parts]}


def cmd_omega(args, data, budget):
    h = _target(args, _load_graph(args, data))
    kind = RepKind.parse(args.kind)
    if not args.enumerate:
        return {"kind": kind.value, "omega": omega_exact(h, kind, budget)}
    return _reps_payload(h, kind, args.counting, budget)


def _reps_payload(h, kind: RepKind, counting: str, budget) -> dict:
    mr = enumerate_min_reps(h, kind, budget)
    out = {"kind": kind.value, "omega": mr.omega}
    if counting in ("plan", "both"):
        out["count_plan"] = mr.count_plan
        out["plans"] = [p.to_dict() for p in mr.plans]
    if counting in ("iso", "both"):
        out["count_iso"] = mr.count_iso
        out["classes"] = [p.family().to_dict() for p in mr.classes]
    unique = {}
    if counting in ("plan", "both"):
        unique["plan"] = mr.count_plan == 1
    if counting in ("iso", "both"):
        unique["iso"] = mr.count_iso == 1
    out["uniquely_intersectable"] = unique
    return out


def cmd_reps(args, data, budget):
    h = _target(args, _load_graph(args, data))
    return _reps_payload(h, RepKind.parse(args.kind), args.counting, budget)


def _formula(fn, *a):
    try:
        return {"value": list(fn(*a))}
    except ExclusionError as exc:
        return {"excluded": exc.report.reasons()}


def cmd_line_graph(args, data, budget):
    g = _load_graph(args, data)
    lg, idx = line_graph(g)
    out = {
        "line_graph": serialize_graph(lg, args.to_format).decode("utf-8"),
        "vertices": [list(e) for e in idx.edges],
    }
    if g.num_edges:
        out["canonical_partition"] = _partition_json(canonical_partition(g))
    wings, three = find_wings(g)
    out["wings"] = [list(t) for t in wings]
    out["three_wings"] = [list(t) for t in three]
    if g.is_connected() and g.num_edges:
        out["stats"] = leaf_stats(g, args.plane_rule).to_dict()
        out["exclusions"] = {
            regime: detect_exclusions(g, regime).to_dict()["flags"]
            for regime in ("cp_theorem", "family_theorem", "antichain_theorem")
        }
        out["formulas"] = {
            "cp": _formula(cp_linegraph_formula, g),
            "omega_f": _formula(omega_f_linegraph_formula, g),
            "omega_a": _formula(omega_a_linegraph_formula, g, args.plane_rule),
        }
    return out


def cmd_plane(args, data, budget):
    plane = projective_plane(args.order)
    out = {"order": plane.order, "points": plane.n, "lines": [list(l) for l in plane.lines]}
    if args.delete_point is not None:
        s = delete_point(plane, args.delete_point)
        out["deleted"] = {"point": args.delete_point, **s.to_dict()}
    return out


def cmd_spaces(args, data, budget):
    spaces = enumerate_linear_spaces(args.points, args.lines, budget, labeled=args.labeled)
    return {"points": args.points, "lines": args.lines, "count": len(spaces), "spaces": [s.to_dict() for s in spaces]}


def cmd_convert(args, data, budget):
    if data is None:
        raise UsageError("convert needs --input PATH or --stdin")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise UsageError(f"convert expects JSON input: {exc.msg}") from None
    if args.from_ == args.to:
        raise UsageError("--from and --to must differ")
    if args.from_ == "partition":
        cliques = obj["cliques"]
        n = obj.get("n", max((max(c) + 1 for c in cliques if c), default=0))
        fam = rep_from_partition(_partition_on(n, cliques))
        return {"sets": [sorted(s) for s in fam.sets], "ground": fam.p, "kinds": sorted(k.value for k in classify(fam))}
    fam = SetFamily.of(obj["sets"])
    p = partition_from_rep(fam)
    host = p.host
    edges = [[u, v, host.q(u, v)] for u in range(host.n) for v in range(u + 1, host.n) if host.q(u, v)]
    return {"n": host.n, "cliques": _partition_json(p), "host_edges": edges}


def _partition_on(n: int, cliques) -> CliquePartition:
    """The partition viewed on the multigraph it covers."""
    mult = [[0] * n for _ in range(n)]
    for c in cliques:
        for i, u in enumerate(c):
            for v in c[i + 1 :]:
                mult[u][v] += 1
                mult[v][u] += 1
    host = Multigraph(n, tuple(tuple(r) for r in mult))
    verdict = is_clique_partition(host, cliques)
    if not verdict:
        raise DomainError(f"not a clique partition: {verdict.violation}")
    return CliquePartition.of(host, cliques)


def _load_corpus(path: str | None) -> list[Graph]:
    if not path:
        return []
    with open(path, "rb") as fh:
        return [from_graph6(line) for line in fh.read().splitlines() if line.strip() and not line.startswith(b"#")]


def cmd_verify(args, data, budget):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    opt = Options(max_n=args.max_n, budget=budget, corpus=_load_corpus(args.corpus), extended=args.extended_budget)
    reports = []
    for name in names:
        report = SuiteReport(name)
        reports.append(report)
        try:
            run_suite(name, opt, report)
        except BudgetExceeded as exc:
            exc.partial = {"suites": [r.to_dict() for r in reports]}
            raise
    return {"suites": [r.to_dict() for r in reports], "passed": all(r.passed for r in reports)}


COMMANDS = {
    "cp": cmd_cp,
    "enum-partitions": cmd_enum_partitions,
    "omega": cmd_omega,
    "reps": cmd_reps,
    "line-graph": cmd_line_graph,
    "plane": cmd_plane,
    "spaces": cmd_spaces,
    "convert": cmd_convert,
    "verify": cmd_verify,
}


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    src = shared.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH")
    src.add_argument("--stdin", action="store_true")
    shared.add_argument("--format", choices=FORMATS)
    shared.add_argument("--json", action="store_true", default=True, help="JSON output (the only mode)")
    shared.add_argument("--budget", type=int, metavar="N", help=f"search node budget (default {DEFAULT_NODES})")
    shared.add_argument("--extended-budget", action="store_true", help=f"raise the budget to {EXTENDED_NODES} nodes")
    shared.add_argument("--seedless", action="store_true", help="accepted for compatibility; runs are always deterministic")

    p = _Parser(prog="ecp", description="Edge clique partitions, set representations and linear spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, help):
        sp = sub.add_parser(name, parents=[shared], help=help)
        sp.add_argument("--line-graph", action="store_true", help="operate on the line graph of the input")
        return sp

    sp = graph_cmd("cp", "minimum clique partition")
    sp.add_argument("--nontrivial", action="store_true")
    sp.add_argument("--proper", action="store_true", help="forbid the clique on all vertices")
    sp.add_argument("--enumerate", action="store_true", help="list every minimum partition")

    sp = graph_cmd("enum-partitions", "enumerate clique partitions")
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--nontrivial", action="store_true")
    sp.add_argument("--proper", action="store_true")

    for name in ("omega", "reps"):
        sp = graph_cmd(name, "intersection number" if name == "omega" else "minimum representations")
        sp.add_argument("--kind", default="m", choices=["m", "f", "a", "u", *(k.value for k in RepKind)])
        sp.add_argument("--counting", default="both", choices=["plan", "iso", "both"])
        if name == "omega":
            sp.add_argument("--enumerate", action="store_true")

    sp = sub.add_parser("line-graph", parents=[shared], help="line graph, canonical partition and formulas")
    sp.add_argument("--to-format", default="graph6", choices=FORMATS)
    sp.add_argument("--plane-rule", default="plane", choices=PLANE_RULES)

    sp = sub.add_parser("plane", parents=[shared], help="projective plane PG(2,k)")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--delete-point", type=int)

    sp = sub.add_parser("spaces", parents=[shared], help="linear spaces up to isomorphism")
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--lines", type=int, required=True)
    sp.add_argument("--labeled", action="store_true")

    sp = sub.add_parser("convert", parents=[shared], help="partition <-> representation")
    sp.add_argument("--from", dest="from_", required=True, choices=["partition", "rep"])
    sp.add_argument("--to", required=True, choices=["partition", "rep"])

    sp = sub.add_parser("verify", parents=[shared], help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=["all", *SUITES])
    sp.add_argument("--max-n", type=int)
    sp.add_argument("--corpus", metavar="PATH", help="extra graphs, one graph6 per line")
    return p


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"ecp: usage error: {exc}", file=err)
        return EXIT_USAGE
    if args.budget is not None and args.budget < 1:
        print("ecp: usage error: --budget must be positive", file=err)
        return EXIT_USAGE
    limit = EXTENDED_NODES if args.extended_budget else (args.budget or DEFAULT_NODES)
    budget = Budget(limit)
    start = time.perf_counter()
    data = None
    code = EXIT_OK
    try:
        data = _read_input(args)
        result = COMMANDS[args.command](args, data, budget)
    except UsageError as exc:
        print(f"ecp: usage error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"ecp: {exc}", file=err)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"ecp: {exc}", file=err)
        result = {"error": "budget", "message": str(exc), **getattr(exc, "partial", {})}
        code = EXIT_BUDGET
    except EcpError as exc:
        print(f"ecp: {exc}", file=err)
        result = {"error": type(exc).__name__, "message": str(exc)}
        code = EXIT_DOMAIN
    if code == EXIT_OK and args.command == "verify" and not result["passed"]:
        code = EXIT_VERIFY
    report = {
        "command": ["ecp", *argv],
        "input_digest": hashlib.sha256(data).hexdigest() if data is not None else None,
        "result": result,
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
        "budget": {"limit": budget.limit, "nodes": budget.nodes},
    }
    out.write(json.dumps(report, sort_keys=True) + "\n")
    if args.command == "verify" and "suites" in result:
        for s in result["suites"]:
            state = "PASS" if s["passed"] else "FAIL"
            print(f"{s['suite']}: {state} ({s['total'] - s['failed']}/{s['total']} cases, {len(s['discrepancies'])} discrepancies)", file=err)
    return code


def main() -> None:
    sys.exit(run())
