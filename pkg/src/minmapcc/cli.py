"""Command-line interface: generate graphs, run solvers, verify, benchmark.

Exit codes: 0 success, 1 usage or input parse error, 2 verification failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Optional

import numpy as np

from .baselines import bfs_components, fastsv, rem_union_find, summarize
from .bench import parse_plan_file, run_experiment, verify_labels, write_csv
from .engine import make_schedule, run_contour
from .errors import EdgeListParseError, MatrixMarketFormatError
from .graph import Graph, generate, load_edge_list, load_matrix_market

ALGO_CHOICES = ("c1", "c2", "cm", "c11mm", "c1m1m", "csyn",
                "fastsv", "unionfind", "bfs")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3


class _CliParser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def default_threads() -> int:
    env = os.environ.get("MINMAPCC_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = _CliParser(prog="minmapcc",
                        description="Connected components via minimum-mapping "
                                    "label contraction, plus baselines.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a synthetic graph as an edge list")
    gen.add_argument("--type", required=True, dest="kind",
                     choices=("path", "cycle", "grid2d", "star", "erdos_renyi", "forest"))
    gen.add_argument("--n", type=int)
    gen.add_argument("--rows", type=int)
    gen.add_argument("--cols", type=int)
    gen.add_argument("--p", type=float)
    gen.add_argument("--trees", type=int)
    gen.add_argument("--seed", type=int)
    gen.add_argument("--output", required=True)
    gen.set_defaults(func=_cmd_gen)

    for name, helptext in (("run", "run one algorithm and print a summary"),
                           ("verify", "run one algorithm and check it against the oracle")):
        cmd = sub.add_parser(name, help=helptext)
        cmd.add_argument("--input", required=True)
        cmd.add_argument("--format", choices=("edgelist", "mtx"))
        cmd.add_argument("--algo", default="c2", choices=ALGO_CHOICES)
        cmd.add_argument("--order-m", type=int, default=1024, dest="order_m")
        cmd.add_argument("--warmup", type=int, default=2)
        cmd.add_argument("--mode", choices=("sync", "async"))
        cmd.add_argument("--atomics", choices=("on", "off"), default="on")
        cmd.add_argument("--threads", type=int, default=None)
        cmd.add_argument("--seed", type=int)
        if name == "run":
            cmd.add_argument("--output")
            cmd.add_argument("--emit-labels", action="store_true")
            cmd.set_defaults(func=_cmd_run)
        else:
            cmd.set_defaults(func=_cmd_verify)

    bench = sub.add_parser("bench", help="execute a plan file and write CSV")
    bench.add_argument("--plan", required=True)
    bench.add_argument("--output", required=True)
    bench.add_argument("--repeats", type=int, default=3)
    bench.set_defaults(func=_cmd_bench)
    return parser


def _load_input(args) -> Graph:
    fmt = args.format
    if fmt is None:
        fmt = "mtx" if str(args.input).endswith(".mtx") else "edgelist"
    if fmt == "mtx":
        return load_matrix_market(args.input)
    return load_edge_list(args.input)


def _run_algo(g: Graph, args) -> tuple[np.ndarray, Optional[int]]:
    """Dispatch an algo flag value; returns (labels, sweeps-until-stable)."""
    if args.order_m < 2:
        raise _UsageError("--order-m must be >= 2")
    threads = args.threads if args.threads is not None else default_threads()
    if args.algo in ("fastsv", "unionfind", "bfs"):
        if args.algo == "fastsv":
            labels, stats = fastsv(g)
            return labels, stats.sweeps_until_stable
        if args.algo == "unionfind":
            return rem_union_find(g), 1
        return bfs_components(g), 1
    mode = args.mode
    if mode is None:
        mode = "sync" if args.algo == "csyn" else "async"
    if args.algo == "csyn" and mode == "async":
        raise _UsageError("csyn always runs synchronously (drop --mode async)")
    schedule = make_schedule(args.algo, args.order_m, args.warmup,
                             sync=(mode == "sync"),
                             atomic=(args.atomics == "on"))
    labels, stats = run_contour(g, schedule, threads=threads, seed=args.seed)
    return labels, stats.sweeps_until_stable


def _cmd_gen(args) -> int:
    kwargs = {}
    for key in ("n", "rows", "cols", "p", "trees", "seed"):
        value = getattr(args, key)
        if value is not None:
            kwargs[key] = value
    g = generate(args.kind, **kwargs)
    with open(args.output, "w", encoding="utf-8") as fh:
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")
    print(f"wrote {args.output}: n={g.n} m={g.m}")
    return EXIT_OK


def _cmd_run(args) -> int:
    if args.emit_labels and not args.output:
        raise _UsageError("--emit-labels requires --output")
    g = _load_input(args)
    started = time.perf_counter()
    labels, sweeps = _run_algo(g, args)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    components = summarize(labels).count if g.n else 0
    print(f"graph={args.input} algo={args.algo} sweeps={sweeps} "
          f"time_ms={elapsed_ms:.3f} components={components}")
    if args.emit_labels:
        ids = g.id_map if g.id_map is not None else np.arange(g.n, dtype=np.int64)
        with open(args.output, "w", encoding="utf-8") as fh:
            for v in range(g.n):
                fh.write(f"{ids[v]} {ids[labels[v]]}\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = _load_input(args)
    labels, _ = _run_algo(g, args)
    report = verify_labels(g, labels)
    if report.match:
        print(f"graph={args.input} algo={args.algo} verified=ok")
        return EXIT_OK
    print(f"graph={args.input} algo={args.algo} verified=MISMATCH "
          f"first_vertex={report.first_mismatch}")
    return EXIT_VERIFY


def _cmd_bench(args) -> int:
    plan = parse_plan_file(args.plan)
    records = run_experiment(plan, repeats=args.repeats)
    write_csv(records, args.output)
    failures = sum(1 for r in records if not r.oracle_match)
    print(f"wrote {args.output}: {len(records)} records, {failures} failures")
    return EXIT_VERIFY if failures else EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help or argparse-internal exits
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EdgeListParseError, MatrixMarketFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except IsADirectoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PermissionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
