"""Command-line entry point.

Exit codes: 0 verified or decided, 1 failures found, 2 search budget
exceeded or run incomplete, 3 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Iterable, Sequence

from . import graph6
from .constructions import (
    CockadeSpec,
    all_cockades,
    build_cockade,
    complete_minus,
    enumerate_triple_patterns,
    family_members,
)
from .enumeration import Filter, default_workers, enumerate_forms
from .graph import Graph, GraphError
from .minors import MinorTarget, SearchBudgetExceeded, SearchStats, find_family_minor, find_minor_of
from .reports import ReportError
from .verify import DEFAULT_NODE_BUDGET, LEMMAS, build_job, recheck_report, run_job, witness

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _graphs(spec: str) -> list[Graph]:
    """Inline graph6, a file of graph6 lines, or '-' for stdin."""
    if spec == "-":
        return list(graph6.read_file(sys.stdin))
    if os.path.exists(spec):
        with open(spec, "r", encoding="ascii") as fh:
            return list(graph6.read_file(fh))
    return [graph6.decode(spec)]


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _print_graphs(graphs: Iterable[Graph]) -> None:
    for g in graphs:
        print(graph6.to_string(g))


def cmd_minor(args: argparse.Namespace) -> int:
    code = EXIT_OK
    target = None
    if args.target_g6:
        target = graph6.decode(args.target_g6)
    elif args.t is None or args.s is None:
        raise GraphError("give --t and --s, or --target-g6")
    for g in _graphs(args.graph):
        stats = SearchStats()
        rec: dict = {"graph": graph6.to_string(g)}
        try:
            if target is not None:
                model = find_minor_of(g, target, max_nodes=args.max_nodes, stats=stats)
                rec["target"] = MinorTarget.explicit(target).describe()
                rec["model"] = None if model is None else model.to_record(normalize=False)
            else:
                model = find_family_minor(g, args.t, args.s, max_nodes=args.max_nodes, stats=stats)
                rec["target"] = MinorTarget.family(args.t, args.s).describe()
                rec["model"] = None if model is None else model.to_record()
            rec["found"] = model is not None
            if model is None:
                rec["search"] = "exhausted"
        except SearchBudgetExceeded as exc:
            rec["found"] = None
            rec["search"] = f"budget exceeded: {exc}"
            code = EXIT_BUDGET
        rec["stats"] = stats.to_record()
        _emit(rec)
    return code


def cmd_enumerate(args: argparse.Namespace) -> int:
    flt = Filter(
        n=args.n,
        min_degree=args.min_deg,
        max_degree=args.max_deg,
        min_edges=args.min_edges,
        max_edges=args.max_edges,
        clique_at_most=args.omega_max,
        independence_at_most=args.alpha_max,
        triangle_free=args.triangle_free,
    )
    after = args.after.encode("ascii") if args.after else None
    forms = enumerate_forms(flt, complement_side=args.complement_side, workers=args.workers, after=after)
    if args.count:
        print(len(forms))
    else:
        for f in forms:
            print(f.decode("ascii"))
    return EXIT_OK


def _named_graph(spec: str) -> Graph:
    names = {"K8=": complete_minus(8, "two_independent")}
    return names[spec] if spec in names else graph6.decode(spec)


def cmd_cockade(args: argparse.Namespace) -> int:
    base = _named_graph(args.base)
    if args.all_shapes:
        for level in all_cockades(base, args.k, args.blocks):
            _print_graphs(level)
    else:
        _print_graphs([build_cockade(CockadeSpec.chain(base, args.k, args.blocks))])
    return EXIT_OK


def _parse_shard(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        i, k = (int(x) for x in text.split("/"))
    except ValueError:
        raise GraphError(f"--shard expects I/K, got {text!r}") from None
    return i, k


def cmd_verify(args: argparse.Namespace) -> int:
    if args.recheck:
        problems = recheck_report(args.recheck, rerun_exhausted=args.rerun_exhausted)
        _emit({"report": args.recheck, "problems": problems})
        return EXIT_FAIL if problems else EXIT_OK
    if args.lemma is None:
        raise GraphError("--lemma is required unless --recheck is given")
    if args.lemma == "delta5-9" and not args.allow_large:
        raise GraphError("the n=9 minimum-degree run needs --allow-large (use --shard/--time-budget to split it)")
    path = args.resume or args.out
    job = build_job(args.lemma, seed=args.seed, samples=args.samples, max_blocks=args.max_blocks,
                    budget=args.max_nodes, workers=args.workers)
    report = run_job(job, path, resume=args.resume is not None, workers=args.workers,
                     max_graphs=args.max_graphs, time_budget=args.time_budget,
                     shard=_parse_shard(args.shard))
    _emit(report.summary())
    return report.exit_code


def cmd_witness(args: argparse.Namespace) -> int:
    code = EXIT_OK
    for g in _graphs(args.graph):
        res = witness(g, max_colors=args.max_colors, max_nodes=args.max_nodes)
        _emit({"graph": graph6.to_string(g), **res.to_record()})
        if res.kind == "counterexample":
            code = EXIT_FAIL
        elif res.kind == "budget_exceeded" and code == EXIT_OK:
            code = EXIT_BUDGET
    return code


def cmd_family(args: argparse.Namespace) -> int:
    members = family_members(args.t, args.s)
    if args.count:
        print(len(members))
    else:
        _print_graphs(members)
    return EXIT_OK


def cmd_patterns(args: argparse.Namespace) -> int:
    for p in enumerate_triple_patterns():
        rec = p.to_record()
        rec["sets"] = [sorted(s) for s in p.realize()]
        _emit(rec)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kminor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    m = sub.add_parser("minor", help="search for a K_t^-s (or explicit) minor")
    m.add_argument("graph", help="graph6 string, file of graph6 lines, or - for stdin")
    m.add_argument("--t", type=int)
    m.add_argument("--s", type=int)
    m.add_argument("--target-g6", help="explicit target graph instead of a family")
    m.add_argument("--max-nodes", type=int, default=None)
    m.set_defaults(func=cmd_minor)

    e = sub.add_parser("enumerate", help="list graphs up to isomorphism")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--min-deg", type=int)
    e.add_argument("--max-deg", type=int)
    e.add_argument("--min-edges", type=int)
    e.add_argument("--max-edges", type=int)
    e.add_argument("--alpha-max", type=int)
    e.add_argument("--omega-max", type=int)
    e.add_argument("--triangle-free", action="store_true")
    e.add_argument("--complement-side", action="store_true", help="generate complements, then map back")
    e.add_argument("--after", help="resume after this canonical graph6")
    e.add_argument("--count", action="store_true")
    e.add_argument("--workers", type=int, default=default_workers())
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("cockade", help="build (H,k)-cockades")
    c.add_argument("--base", default="K8=", help="graph6 of H, or K8=")
    c.add_argument("--k", type=int, default=4)
    c.add_argument("--blocks", type=int, default=2)
    c.add_argument("--all-shapes", action="store_true", help="every class with at most --blocks blocks")
    c.set_defaults(func=cmd_cockade)

    v = sub.add_parser("verify", help="run a verification driver and write a report")
    v.add_argument("--lemma", choices=LEMMAS)
    v.add_argument("--out", help="report file (JSON lines)")
    v.add_argument("--resume", metavar="FILE", help="continue an interrupted report")
    v.add_argument("--workers", type=int, default=default_workers())
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--max-blocks", type=int, default=3)
    v.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    v.add_argument("--max-graphs", type=int, help="stop after this many graphs (resumable)")
    v.add_argument("--time-budget", type=float, help="stop after this many seconds (resumable)")
    v.add_argument("--shard", help="I/K: only items with index = I mod K")
    v.add_argument("--allow-large", action="store_true", help="permit the n=9 minimum-degree run")
    v.add_argument("--recheck", metavar="FILE", help="re-validate witnesses of an existing report")
    v.add_argument("--rerun-exhausted", action="store_true", help="with --recheck, repeat exhausted searches")
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("witness", help="K9^-6 minor or an 8-colouring")
    w.add_argument("graph", help="graph6 string, file of graph6 lines, or - for stdin")
    w.add_argument("--max-colors", type=int, default=8)
    w.add_argument("--max-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    w.set_defaults(func=cmd_witness)

    f = sub.add_parser("family", help="members of K_t^-s up to isomorphism")
    f.add_argument("--t", type=int, required=True)
    f.add_argument("--s", type=int, required=True)
    f.add_argument("--count", action="store_true")
    f.set_defaults(func=cmd_family)

    t = sub.add_parser("patterns", help="intersection patterns of three 5-cliques")
    t.set_defaults(func=cmd_patterns)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, ReportError) as exc:
        print(f"kminor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
