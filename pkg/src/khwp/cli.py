"""Command-line front end: instance generation, solvers, exact oracles,
walk validation, and benchmark sweeps with CSV reporting.

Exit codes: 0 ok, 1 invalid input, 2 infeasible instance, 3 size cap
exceeded, 4 internal invariant violation (including an empirically
breached bound, which is reported rather than swallowed).
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from . import fixtures, generators
from .config import Caps, DEFAULT_CAPS, load_caps
from .errors import (
    CapExceededError,
    GraphFormatError,
    InfeasibleError,
    InvariantViolationError,
    KhwpError,
    NotATreeError,
)
from .graphs import (
    Graph,
    dump_graph,
    dump_hypergraph,
    load_graph,
    load_hypergraph,
    tree_diameter,
)
from .hypergraph import format_hyperwalk, solve_khwp_hypergraph
from .oracle import exact_hk
from .tree import k_rhwp_tree, one_hwp_tree
from .two_agents import alg2, simple_3approx
from .walks import (
    TransitionWalk,
    format_walk,
    parse_walk,
    rhwp_lower_bound,
    validate_walk,
)

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_CAP_EXCEEDED = 3
EXIT_INVARIANT = 4

CSV_HEADER = ["id", "n", "m", "k", "algo", "len", "oracle", "bound", "ms", "seed"]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse usage errors count as invalid input
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_INVALID_INPUT)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _append_csv(path: str, rows: list[dict]) -> None:
    new_file = not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        if new_file:
            writer.writeheader()
        for row in rows:
            writer.writerow({key: row.get(key, "") for key in CSV_HEADER})


def _emit_walk(args, g: Graph, walk: TransitionWalk) -> None:
    report = validate_walk(g, walk)
    if not (report.valid and report.spanning):
        raise InvariantViolationError(f"solver emitted an invalid walk: {report.first_violation}")
    text = format_walk(walk, report.spanning)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)


# -- subcommands -----------------------------------------------------------


def cmd_generate(args, caps: Caps) -> int:
    kind = args.kind
    if kind == "fixture":
        if args.name == "fig1-tree":
            text = dump_graph(fixtures.fig1_tree())
        elif args.name == "fig6-hypergraph":
            text = dump_hypergraph(fixtures.fig6_hypergraph())
        else:
            raise GraphFormatError(f"unknown fixture {args.name!r}")
    elif kind == "tree":
        text = dump_graph(generators.generate_tree(args.n, args.seed))
    elif kind == "random_graph":
        text = dump_graph(generators.generate_random_graph(args.n, args.p, args.seed))
    elif kind == "grid":
        text = dump_graph(generators.generate_grid(args.rows, args.cols))
    elif kind == "hypergraph":
        text = dump_hypergraph(generators.generate_hypergraph(args.n, args.m, args.arity, args.seed))
    else:
        raise GraphFormatError(f"unknown kind {kind!r}")
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve1(args, caps: Caps) -> int:
    g = load_graph(_read(args.graph))
    t0 = time.perf_counter()
    w1 = one_hwp_tree(g)
    ms = (time.perf_counter() - t0) * 1000
    walk = TransitionWalk(k=1, configs=[(v,) for v in w1], host=g)
    _emit_walk(args, g, walk)
    diam, _ = tree_diameter(g)
    bound = 2 * (g.n - 1) - diam
    print(f"length {walk.length} bound {bound}", file=sys.stderr)
    if args.csv:
        _append_csv(args.csv, [{
            "id": args.id or args.graph, "n": g.n, "m": g.m, "k": 1,
            "algo": "1hwp-tree", "len": walk.length, "bound": bound,
            "ms": f"{ms:.2f}", "seed": "",
        }])
    return EXIT_OK


def cmd_solvek(args, caps: Caps) -> int:
    g = load_graph(_read(args.graph))
    t0 = time.perf_counter()
    if args.trace:
        walk, traces = k_rhwp_tree(g, args.k, trace=True)
        for step in traces:
            print(f"head {step.head} tail {step.tail} target {step.target}", file=sys.stderr)
    else:
        walk = k_rhwp_tree(g, args.k)
    ms = (time.perf_counter() - t0) * 1000
    _emit_walk(args, g, walk)
    bound = rhwp_lower_bound(g, args.k)
    print(f"length {walk.length} bound {bound}", file=sys.stderr)
    if walk.length != bound:
        raise InvariantViolationError(f"walk length {walk.length} differs from the optimum {bound}")
    if args.csv:
        _append_csv(args.csv, [{
            "id": args.id or args.graph, "n": g.n, "m": g.m, "k": args.k,
            "algo": "krhwp-tree", "len": walk.length, "bound": bound,
            "ms": f"{ms:.2f}", "seed": "",
        }])
    return EXIT_OK


def cmd_solve2(args, caps: Caps) -> int:
    g = load_graph(_read(args.graph))
    mode = {"greedy": "greedy", "local": "local_search", "exact": "exact"}[args.packing]
    t0 = time.perf_counter()
    if args.mode == "simple":
        walk = simple_3approx(g)
        diag_row = None
        violated = False
    else:
        result = alg2(g, mode, caps)
        walk = result.walk
        d = result.diagnostics
        diag_row = [g.n, g.m, d.n_c4, d.n_grids, d.w_sol, d.len_tr,
                    d.matching_cost, walk.length]
        violated = d.lemma10_violated
    ms = (time.perf_counter() - t0) * 1000
    _emit_walk(args, g, walk)
    oracle_len = ""
    if args.oracle:
        oracle_len, _ = exact_hk(g, 2, caps=caps)
        oracle_len = str(oracle_len)
    if diag_row is not None:
        diag_row.append(oracle_len)
        print("n,m,c4,grids,w_sol,len_tr,match_cost,walk_len,oracle_h2", file=sys.stderr)
        print(",".join(str(x) for x in diag_row), file=sys.stderr)
    if args.csv:
        _append_csv(args.csv, [{
            "id": args.id or args.graph, "n": g.n, "m": g.m, "k": 2,
            "algo": f"2hwp-{args.mode}", "len": walk.length,
            "oracle": oracle_len, "ms": f"{ms:.2f}", "seed": "",
        }])
    if violated:
        print("finding: odd-contracted bound breached (see diagnostics)", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_solveh(args, caps: Caps) -> int:
    h = load_hypergraph(_read(args.hypergraph))
    result = solve_khwp_hypergraph(h, caps)
    text = format_hyperwalk(result)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    print(f"length {len(result.walk) - 1} cover {len(result.cover)}", file=sys.stderr)
    return EXIT_OK


def cmd_oracle(args, caps: Caps) -> int:
    g = load_graph(_read(args.graph))
    length, walk = exact_hk(g, args.k, restricted=args.restricted, caps=caps)
    report = validate_walk(g, walk)
    text = format_walk(walk, report.spanning) + f"optimal {length}\n"
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(args, caps: Caps) -> int:
    g = load_graph(_read(args.graph))
    walk = parse_walk(_read(args.walk), g)
    report = validate_walk(g, walk)
    hist = " ".join(f"r{r}:{c}" for r, c in sorted(report.histogram.items()))
    print(
        f"length {report.length} spanning {1 if report.spanning else 0} "
        f"valid {1 if report.valid else 0} {hist}"
    )
    if not report.valid:
        print(f"invalid walk: {report.first_violation}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    if not report.spanning:
        print("invalid walk: not spanning", file=sys.stderr)
        return EXIT_INVALID_INPUT
    return EXIT_OK


def cmd_bench(args, caps: Caps) -> int:
    rows: list[dict] = []
    prng = generators.PRNG_ID
    if args.suite == "tree-optimality":
        for i in range(args.trials):
            seed = args.seed + i
            n = 2 + (seed % max(1, args.n - 1))
            g = generators.generate_tree(n, seed)
            t0 = time.perf_counter()
            w1 = one_hwp_tree(g)
            ms = (time.perf_counter() - t0) * 1000
            diam, _ = tree_diameter(g)
            bound = 2 * (g.n - 1) - diam
            if len(w1) - 1 != bound:
                raise InvariantViolationError(f"tree walk length {len(w1) - 1} != {bound}")
            rows.append({
                "id": f"tree-{prng}-s{seed}-i{i}", "n": g.n, "m": g.m, "k": 1,
                "algo": "1hwp-tree", "len": len(w1) - 1, "bound": bound,
                "ms": f"{ms:.2f}", "seed": seed,
            })
    elif args.suite == "rhwp-small":
        for i in range(args.trials):
            seed = args.seed + i
            n = 3 + (seed % max(1, min(args.n, 9) - 2))
            g = generators.generate_tree(n, seed)
            k = 2 + (seed % 2)
            if k > n:
                k = n
            t0 = time.perf_counter()
            walk = k_rhwp_tree(g, k)
            ms = (time.perf_counter() - t0) * 1000
            opt, _ = exact_hk(g, k, caps=caps)
            if walk.length != opt:
                raise InvariantViolationError(f"restricted tree walk {walk.length} != oracle {opt}")
            rows.append({
                "id": f"rhwp-{prng}-s{seed}-i{i}", "n": g.n, "m": g.m, "k": k,
                "algo": "krhwp-tree", "len": walk.length, "oracle": opt,
                "bound": rhwp_lower_bound(g, k), "ms": f"{ms:.2f}", "seed": seed,
            })
    elif args.suite == "approx2-small":
        for i in range(args.trials):
            seed = args.seed + i
            n = 3 + (seed % max(1, min(args.n, 8) - 2))
            g = generators.generate_random_graph(n, 0.5, seed)
            opt, _ = exact_hk(g, 2, caps=caps)
            for algo, run in (
                ("2hwp-simple", lambda: simple_3approx(g)),
                ("2hwp-alg2", lambda: alg2(g, "exact", caps).walk),
            ):
                t0 = time.perf_counter()
                walk = run()
                ms = (time.perf_counter() - t0) * 1000
                rows.append({
                    "id": f"approx2-{prng}-s{seed}-i{i}", "n": g.n, "m": g.m, "k": 2,
                    "algo": algo, "len": walk.length, "oracle": opt,
                    "bound": 3 * opt + 1, "ms": f"{ms:.2f}", "seed": seed,
                })
    elif args.suite == "hypergraph-small":
        for i in range(args.trials):
            seed = args.seed + i
            h = generators.generate_hypergraph(min(args.n, 9), 8, 3, seed)
            t0 = time.perf_counter()
            result = solve_khwp_hypergraph(h, caps)
            ms = (time.perf_counter() - t0) * 1000
            rows.append({
                "id": f"hyper-{prng}-s{seed}-i{i}", "n": h.n, "m": h.m, "k": h.k,
                "algo": "khwp-hypergraph", "len": len(result.walk) - 1,
                "bound": 2 * len(result.cover), "ms": f"{ms:.2f}", "seed": seed,
            })
    else:
        raise GraphFormatError(f"unknown suite {args.suite!r}")
    _append_csv(args.csv, rows)
    print(f"wrote {len(rows)} rows to {args.csv}", file=sys.stderr)
    return EXIT_OK


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="khwp", description=__doc__)
    parser.add_argument("--caps", help="key=value caps file overriding the exact-size defaults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated instance or named fixture")
    p.add_argument("--kind", required=True,
                   choices=["tree", "random_graph", "grid", "hypergraph", "fixture"])
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--arity", type=int, default=3)
    p.add_argument("--rows", type=int, default=2)
    p.add_argument("--cols", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name", help="fixture name: fig1-tree or fig6-hypergraph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve1", help="single-agent optimal spanning walk on a tree")
    p.add_argument("graph")
    p.add_argument("--out")
    p.add_argument("--csv")
    p.add_argument("--id")
    p.set_defaults(func=cmd_solve1)

    p = sub.add_parser("solvek", help="k-agent restricted optimal walk on a tree")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="emit head/tail per step")
    p.add_argument("--out")
    p.add_argument("--csv")
    p.add_argument("--id")
    p.set_defaults(func=cmd_solvek)

    p = sub.add_parser("solve2", help="two-agent approximation on an arbitrary graph")
    p.add_argument("graph")
    p.add_argument("--mode", choices=["simple", "alg2"], default="alg2")
    p.add_argument("--packing", choices=["greedy", "local", "exact"], default="local")
    p.add_argument("--oracle", action="store_true", help="also compute the exact optimum")
    p.add_argument("--out")
    p.add_argument("--csv")
    p.add_argument("--id")
    p.set_defaults(func=cmd_solve2)

    p = sub.add_parser("solveh", help="k-agent walk on a k-uniform hypergraph")
    p.add_argument("hypergraph")
    p.add_argument("--out")
    p.set_defaults(func=cmd_solveh)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--restricted", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("validate", help="check a walk file against its graph")
    p.add_argument("graph")
    p.add_argument("walk")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bench", help="seeded benchmark sweep appending CSV rows")
    p.add_argument("--suite", required=True,
                   choices=["tree-optimality", "rhwp-small", "approx2-small", "hypergraph-small"])
    p.add_argument("--n", type=int, default=40)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    caps = DEFAULT_CAPS
    try:
        if args.caps:
            caps = load_caps(args.caps)
        return args.func(args, caps)
    except (GraphFormatError, NotATreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP_EXCEEDED
    except InvariantViolationError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except KhwpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
