"""The zxr command line: parse, rewrite, verify, and report.

Exit codes: 0 success / equal / holds, 1 unequal / fails, 2 usage or input
error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import axioms, graphstate, proofs, rules, textio
from .diagram import Diagram
from .semantics import ResourceLimit, equal_up_to_scalar, evaluate, scalar_fit

OK, DIFFER, USAGE, RESOURCE = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _load_diagram(path: str) -> Diagram:
    try:
        return textio.parse(Path(path).read_text())
    except OSError as exc:
        raise CliError(USAGE, f"cannot read {path}: {exc}")
    except textio.ParseError as exc:
        raise CliError(USAGE, f"{path}: {exc}")


def _load_graph(path: str) -> graphstate.SimpleGraph:
    try:
        verts, edges = textio.parse_edges(Path(path).read_text())
    except OSError as exc:
        raise CliError(USAGE, f"cannot read {path}: {exc}")
    except textio.ParseError as exc:
        raise CliError(USAGE, f"{path}: {exc}")
    return graphstate.SimpleGraph(verts, edges)


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _emit_report(args, report: dict) -> None:
    if getattr(args, "json", None):
        Path(args.json).write_text(json.dumps(report, indent=2) + "\n")


# -- subcommands -----------------------------------------------------------------


def cmd_check_equal(args) -> int:
    a = _load_diagram(args.a)
    b = _load_diagram(args.b)
    try:
        ma = evaluate(a, args.model_n or 1)
        mb = evaluate(b, args.model_n or 1)
    except ResourceLimit as exc:
        raise CliError(RESOURCE, str(exc))
    if ma.shape != mb.shape:
        print(f"shapes differ: {ma.shape} vs {mb.shape}")
        return DIFFER
    lam, residual = scalar_fit(ma, mb)
    equal = equal_up_to_scalar(ma, mb, args.tol)
    print(f"equal={equal} lambda={lam:.12g} max_residual={residual:.3e}")
    _emit_report(args, {"suite": "check-equal", "model_n": args.model_n or 1,
                        "equal": equal, "lambda": [lam.real, lam.imag],
                        "max_residual": residual, "ok": equal})
    return OK if equal else DIFFER


def cmd_rewrite(args) -> int:
    d = _load_diagram(args.input)
    if bool(args.rule) == bool(args.script):
        raise CliError(USAGE, "give exactly one of --rule or --script")
    if args.rule:
        if args.rule not in rules.RULE_IDS:
            raise CliError(USAGE, f"unknown rule {args.rule!r}")
        if args.at:
            anchor = tuple(args.at.split(","))
        else:
            sites = rules.match_sites(args.rule, d)
            if not sites:
                print(f"{args.rule}: no matching site")
                return DIFFER
            anchor = sites[0]
        script = proofs.ProofScript(args.rule, [(args.rule, anchor)])
    else:
        try:
            text = Path(args.script).read_text()
        except OSError as exc:
            raise CliError(USAGE, f"cannot read {args.script}: {exc}")
        script = proofs.ProofScript.from_json_lines(Path(args.script).stem, text)
    try:
        if args.check:
            result = proofs.replay(script, d, euler_on=args.enable_euler,
                                   tol=args.tol)
        else:
            result = d
            for rule, anchor in script.steps:
                result = proofs.apply_step(rule, result, anchor,
                                           euler_on=args.enable_euler)
    except proofs.ReplayError as exc:
        print(f"replay failed: {exc}")
        return DIFFER
    except rules.RuleError as exc:
        print(f"rewrite failed: {exc}")
        return DIFFER
    _write(args.output, textio.serialize(result))
    return OK


def cmd_graph_state(args) -> int:
    g = _load_graph(args.graph)
    _write(args.output, textio.serialize(graphstate.graph_state(g)))
    return OK


def cmd_local_comp(args) -> int:
    g = _load_graph(args.graph)
    try:
        h = graphstate.local_complement(g, args.vertex)
    except graphstate.GraphError as exc:
        raise CliError(USAGE, str(exc))
    _write(args.output, textio.serialize_edges(h.vertices, h.edges))
    return OK


def cmd_render(args) -> int:
    d = _load_diagram(args.input)
    _write(args.output, textio.to_dot(d))
    return OK


def _verify_axioms(args) -> tuple[bool, dict]:
    models = (args.model_n,) if args.model_n else (1, 2, 3)
    rows = []
    ok = True
    for n in models:
        for axiom in axioms.BASE_AXIOMS:
            holds, residual = axioms.verify_axiom_residual(axiom, n, args.tol)
            rows.append({"model_n": n, "axiom": axiom, "holds": holds,
                         "max_residual": residual})
            ok = ok and holds
            print(f"model {n}  {axiom:12s} {'pass' if holds else 'FAIL'}")
    return ok, {"suite": "axioms", "rows": rows, "ok": ok}


def _verify_independence(args) -> tuple[bool, dict]:
    rows = axioms.independence_report(tol=args.tol)
    for r in rows:
        print(f"model {r['model_n']}  {r['axiom']:12s} "
              f"{'pass' if r['holds'] else 'FAIL'}  "
              f"residual={r['max_residual']:.3e}")
    ok = axioms.independence_verdict(rows)
    print("independence result " + ("reproduced" if ok else "NOT reproduced"))
    return ok, {"suite": "independence", "rows": rows, "ok": ok}


def _sweep_graphs(args):
    labels = tuple("abcdefgh")
    for size in range(1, args.max_vertices + 1):
        for g in graphstate.all_graphs(labels[:size]):
            yield g
    if args.random:
        rng = random.Random(args.seed)
        for _ in range(args.random):
            size = rng.choice((6, 7))
            verts = labels[:size]
            edges = [e for e in itertools.combinations(verts, 2)
                     if rng.random() < 0.5]
            yield graphstate.SimpleGraph.build(verts, edges)


def _verify_graph_property(args, checker, name) -> tuple[bool, dict]:
    rows = []
    ok = True
    count = 0
    for g in _sweep_graphs(args):
        for u in g.vertices:
            holds = checker(g, u, args.tol)
            count += 1
            if not holds:
                ok = False
                rows.append({"vertices": list(g.vertices),
                             "edges": [sorted(e) for e in g.edge_list()],
                             "vertex": u, "holds": False})
    print(f"{name}: {count} checks, {'all hold' if ok else 'FAILURES'}")
    return ok, {"suite": name, "checks": count, "failures": rows, "ok": ok}


def cmd_verify(args) -> int:
    try:
        if args.suite == "axioms":
            ok, report = _verify_axioms(args)
        elif args.suite == "independence":
            ok, report = _verify_independence(args)
        elif args.suite == "fixpoint":
            ok, report = _verify_graph_property(
                args, graphstate.check_fixpoint, "fixpoint")
        elif args.suite == "vdn":
            ok, report = _verify_graph_property(
                args, graphstate.check_vdn, "vdn")
        else:
            raise CliError(USAGE, f"unknown suite {args.suite!r}")
    except ResourceLimit as exc:
        raise CliError(RESOURCE, str(exc))
    _emit_report(args, report)
    return OK if ok else DIFFER


# -- entry point ----------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxr", description=__doc__)
    p.add_argument("--model-n", type=int, default=None, dest="model_n",
                   help="interpret spider phases scaled by n (default 1; "
                        "the axioms suite sweeps 1-3 when unset)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="tolerance for scalar-equivalence checks")
    p.add_argument("--enable-euler", action="store_true",
                   help="allow the gated decomposition rules")
    p.add_argument("--max-vertices", type=int, default=5,
                   help="exhaustive sweep bound for graph suites")
    p.add_argument("--random", type=int, default=0, metavar="N",
                   help="additionally sample N random 6-7 vertex graphs")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the random graph sample")
    p.add_argument("--json", metavar="PATH",
                   help="also write a JSON report to PATH")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check-equal", help="compare two diagrams up to scalar")
    c.add_argument("a")
    c.add_argument("b")
    c.set_defaults(func=cmd_check_equal)

    c = sub.add_parser("rewrite", help="apply a rule or replay a script")
    c.add_argument("input")
    c.add_argument("--rule", help="rule id (see the rules module)")
    c.add_argument("--at", help="comma-separated anchor node ids")
    c.add_argument("--script", help="JSON-lines proof script")
    c.add_argument("--check", action="store_true",
                   help="assert per-step semantic preservation")
    c.add_argument("--output", "-o", default="-")
    c.set_defaults(func=cmd_rewrite)

    c = sub.add_parser("graph-state", help="emit the graph-state diagram")
    c.add_argument("graph")
    c.add_argument("--output", "-o", default="-")
    c.set_defaults(func=cmd_graph_state)

    c = sub.add_parser("local-comp", help="complement a graph locally")
    c.add_argument("graph")
    c.add_argument("vertex")
    c.add_argument("--output", "-o", default="-")
    c.set_defaults(func=cmd_local_comp)

    c = sub.add_parser("verify", help="run a verification sweep")
    c.add_argument("suite", choices=("axioms", "fixpoint", "vdn", "independence"))
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("render", help="emit Graphviz DOT")
    c.add_argument("input")
    c.add_argument("--output", "-o", default="-")
    c.set_defaults(func=cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return RESOURCE


if __name__ == "__main__":
    sys.exit(main())
