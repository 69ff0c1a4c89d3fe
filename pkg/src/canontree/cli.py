"""Command-line interface: ``canontree decompose|blocks|verify|gen-*``.

Exit codes: 0 success, 1 input or usage error, 2 a requested check failed,
3 the strategy hit an infeasible task.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .decomposition import DecompositionError, classify_parts, decomposition_from_nested
from .generators import (
    Construction,
    gen_cycle_cliques,
    gen_example3_like,
    gen_example4,
    gen_glued_k5,
    gen_path_cliques,
    gen_random,
)
from .graph import Graph, GraphFormatError, automorphisms, parse_graph
from .profiles import block_profile, enumerate_profiles, k_blocks
from .refinement import (
    block_parts_are_blocks,
    condition7,
    is_well_separated,
    refine_theorem31,
    theorem34_hypotheses,
)
from .separations import MAX_N, LimitExceeded, enumerate_separations, is_tight
from .strategies import InfeasibleTask, bound_report, is_canonical, run_iterated

EXIT_OK, EXIT_INPUT, EXIT_CHECK, EXIT_INFEASIBLE = 0, 1, 2, 3
CHECK_NAMES = ("canonical", "bounds", "thm31", "thm34")


class UsageError(ValueError):
    pass


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _read_graph(path: str) -> Graph:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _positive_k(k: int) -> int:
    if k < 1:
        raise UsageError(f"--k must be at least 1, got {k}")
    return k


def _system(G: Graph, k: int, which: str, max_n: int):
    seps = enumerate_separations(G, k, max_n=max_n)
    if which == "tight":
        seps = [s for s in seps if is_tight(G, s)]
    return seps


def _parse_checks(text: str | None) -> list[str]:
    if not text:
        return []
    names = [c.strip() for c in text.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECK_NAMES]
    if unknown:
        raise UsageError(f"unknown check(s) {', '.join(unknown)}; choose from {', '.join(CHECK_NAMES)}")
    return names


def cmd_decompose(args: argparse.Namespace, out) -> int:
    checks = _parse_checks(args.check)
    G = _read_graph(args.input)
    k = _positive_k(args.k)
    full = enumerate_separations(G, k, max_n=args.max_n)
    seps = _system(G, k, args.seps, args.max_n)
    if args.profiles == "blocks":
        profiles = [block_profile(X, full) for X in k_blocks(G, k)]
    else:
        profiles = enumerate_profiles(G, k, full)
    run = run_iterated(G, k, args.strategy, profiles, system=seps) if profiles else None
    chosen = run.chosen if run is not None else frozenset()
    td = decomposition_from_nested(G, chosen)
    labels = classify_parts(td, profiles)

    reports: dict[str, dict] = {}
    failed = False
    if "canonical" in checks:
        ok = is_canonical(chosen, automorphisms(G))
        reports["canonical"] = {"ok": ok}
        failed |= not ok
    if "bounds" in checks:
        rep = bound_report(run) if run is not None else {"ok": True, "p": 0, "N": 0}
        reports["bounds"] = rep
        failed |= not rep["ok"]
    if "thm31" in checks:
        refined = refine_theorem31(G, k, seps if args.seps == "tight" else full, args.strategy, max_n=args.max_n)
        rep = refined.to_json()
        rep["ok"] = all(v is not False for v in refined.verdicts.values())
        vacuous = [b["block"] for b in rep["blocks"] if not b["well_separated"]]
        if vacuous:
            rep["note"] = "(ii) is vacuous for blocks that are not well separated"
        reports["thm31"] = rep
        failed |= not rep["ok"]
    if "thm34" in checks:
        holds, verdict = theorem34_hypotheses(G, k)
        rep = {"hypotheses": holds, "edges": [[u, v, c] for (u, v), c in sorted(verdict.items())]}
        if holds:
            refined = refine_theorem31(G, k, full, args.strategy, max_n=args.max_n)
            rep["ok"] = block_parts_are_blocks(refined)
        else:
            rep["ok"] = True
            rep["note"] = "hypotheses do not hold; conclusion not checked"
        reports["thm34"] = rep
        failed |= not rep["ok"]

    if args.format == "dot":
        out.write(td.to_dot(labels))
    elif args.format == "text":
        out.write(f"k={k} strategy={args.strategy} profiles={len(profiles)} |N|={len(chosen)} parts={td.size}\n")
        for t in range(td.size):
            out.write(f"part {t}: {td.part(t)} [{', '.join(labels[t])}]\n")
        for u, v, s in td.edges:
            out.write(f"edge {u}-{v}: {s!r}\n")
        for name, rep in reports.items():
            out.write(f"check {name}: {'ok' if rep['ok'] else 'FAILED'}\n")
    else:
        data = {
            "k": k,
            "strategy": args.strategy,
            "profiles": len(profiles),
            "separations": [s.to_json() for s in td.system],
            "decomposition": td.to_json(labels),
            "checks": reports,
        }
        out.write(_dump(data))
    if failed:
        print("one or more checks failed", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


def cmd_blocks(args: argparse.Namespace, out) -> int:
    G = _read_graph(args.input)
    k = _positive_k(args.k)
    S = _system(G, k, args.seps, args.max_n) if args.well_separated else None
    rows = []
    for X in k_blocks(G, k):
        row = {"block": list(X)}
        if args.well_separated:
            ok, witness = is_well_separated(G, k, X, S)
            row["well_separated"] = ok
            if witness is not None:
                row["witness"] = [s.to_json() for s in witness]
        if args.condition7:
            row["condition7"] = condition7(G, k, X)
        rows.append(row)
    if args.format == "text":
        for row in rows:
            flags = " ".join(f"{key}={row[key]}" for key in ("well_separated", "condition7") if key in row)
            out.write(f"{row['block']} {flags}".rstrip() + "\n")
    else:
        out.write(_dump({"k": k, "blocks": rows}))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out) -> int:
    from .verify import run_suite

    if not 0 <= args.max_n <= 7:
        raise UsageError("--max-n for verify must lie between 0 and 7")
    results = run_suite(args.suite, max_n=args.max_n, seed=args.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    out.write(_dump({"suite": args.suite, "results": [r.to_json() for r in results]}))
    return EXIT_CHECK if any(r.status == "fail" for r in results) else EXIT_OK


def _emit(c: Construction, out) -> int:
    for name in sorted(c.sets):
        out.write(f"# {name}: {' '.join(map(str, c.sets[name]))}\n")
    out.write(c.graph.to_edge_list())
    return EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canontree", description="Canonical tree-decompositions distinguishing k-blocks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_input(p):
        p.add_argument("--input", required=True, help="edge-list file, or - for standard input")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--seps", choices=("tight", "proper"), default="proper")
        p.add_argument("--max-n", type=int, default=MAX_N, help="largest accepted vertex count")

    p = sub.add_parser("decompose", help="build a canonical tree-decomposition")
    graph_input(p)
    p.add_argument("--strategy", choices=("ext", "loc"), default="ext")
    p.add_argument("--profiles", choices=("blocks", "all"), default="blocks")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--check", help="comma list of " + ",".join(CHECK_NAMES))
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("blocks", help="list k-blocks")
    graph_input(p)
    p.add_argument("--well-separated", action="store_true")
    p.add_argument("--condition7", action="store_true")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_blocks, seps="tight")

    p = sub.add_parser("verify", help="run corpus verification suites")
    p.add_argument("--suite", choices=("thm11", "bounds", "thm31", "thm34", "canonical", "oracles", "all"), default="all")
    p.add_argument("--max-n", type=int, default=6, help="corpus holds every graph up to this many vertices")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen-cycle-cliques")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--m", type=int, default=5)
    p.set_defaults(func=lambda a, out: _emit(gen_cycle_cliques(a.n, a.m), out))

    p = sub.add_parser("gen-path-cliques")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--m", type=int, default=5)
    p.add_argument("--path-length", type=int, default=2)
    p.set_defaults(func=lambda a, out: _emit(gen_path_cliques(a.n, a.m, a.path_length), out))

    p = sub.add_parser("gen-example4")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--core", type=int, default=6)
    p.add_argument("--attach", type=_int_list, default=(3, 3, 3))
    p.set_defaults(func=lambda a, out: _emit(gen_example4(a.k, a.core, a.attach), out))

    p = sub.add_parser("gen-glued-k5")
    p.add_argument("--t", type=int, default=3)
    p.set_defaults(func=lambda a, out: _emit(gen_glued_k5(a.t), out))

    p = sub.add_parser("gen-example3")
    p.add_argument("--pairs", type=int, default=1)
    p.set_defaults(func=lambda a, out: _emit(gen_example3_like(a.pairs), out))

    p = sub.add_parser("gen-random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=lambda a, out: _emit(Construction(gen_random(a.n, a.density, a.seed)), out))
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except (UsageError, GraphFormatError, LimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleTask as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except DecompositionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
