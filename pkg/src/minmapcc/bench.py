"""Experiment orchestration: run plans, verify against the oracle, emit CSV.

Plans execute serially so timing stays unpolluted; each run may still be
internally parallel per its thread count. Every record is checked against
the union-find oracle before it is emitted.
"""

from __future__ import annotations

import csv
import hashlib
import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .baselines import bfs_components, fastsv, normalize_labels, rem_union_find, summarize
from .engine import IterationStats, LabelArray, canonical_variant, make_schedule, run_contour
from .graph import Graph, load_edge_list, load_matrix_market

__all__ = [
    "ALGORITHMS",
    "PlanItem",
    "ExperimentRecord",
    "VerifyReport",
    "parse_plan_file",
    "run_experiment",
    "verify_labels",
    "write_csv",
    "label_checksum",
]

ALGORITHMS = ("contour", "fastsv", "unionfind", "bfs")

CSV_COLUMNS = (
    "graph", "n", "m", "algorithm", "variant", "sync", "atomic", "threads",
    "sweeps_until_stable", "sweeps_executed", "wall_time_ms", "components",
    "label_checksum", "oracle_match",
)


@dataclass(frozen=True)
class PlanItem:
    """One experiment: a graph source plus algorithm and execution settings."""

    graph: Union[Graph, str, Path]
    fmt: str = "edgelist"          # edgelist | mtx; used when graph is a path
    algo: str = "contour"          # contour | fastsv | unionfind | bfs
    variant: str = "c2"            # contour variant token; ignored otherwise
    mode: str = "async"            # sync | async (contour only)
    atomics: bool = True
    threads: int = 1
    high_order: int = 1024
    warmup: int = 2
    seed: Optional[int] = None
    name: str = ""


@dataclass(frozen=True)
class ExperimentRecord:
    """One verified measurement; field order matches the CSV schema."""

    graph: str
    n: int
    m: int
    algorithm: str
    variant: str
    sync: bool
    atomic: bool
    threads: int
    sweeps_until_stable: int
    sweeps_executed: int
    wall_time_ms: float
    components: int
    label_checksum: str
    oracle_match: bool
    error: Optional[str] = None  # not a CSV column; set on load failures


@dataclass(frozen=True)
class VerifyReport:
    match: bool
    first_mismatch: Optional[int] = None


def verify_labels(g: Graph, labels: LabelArray) -> VerifyReport:
    """Compare labels exactly against the union-find oracle."""
    expected = rem_union_find(g)
    if np.array_equal(expected, labels):
        return VerifyReport(match=True)
    diff = np.nonzero(expected != np.asarray(labels))[0]
    return VerifyReport(match=False, first_mismatch=int(diff[0]))


def label_checksum(labels: LabelArray) -> str:
    """Order-independent hash of normalized labels.

    Hashes the sorted multiset of (component minimum, size) pairs, so any
    algorithm producing the same components gets the same checksum.
    """
    summary = summarize(normalize_labels(labels))
    digest = hashlib.sha256()
    for rep, size in zip(summary.representatives, summary.sizes):
        digest.update(f"{int(rep)}:{int(size)};".encode())
    return digest.hexdigest()[:16]


def _load_graph(item: PlanItem) -> tuple[Graph, str]:
    if isinstance(item.graph, Graph):
        g = item.graph
        return g, item.name or g.name or "<memory>"
    path = str(item.graph)
    if item.fmt == "mtx":
        g = load_matrix_market(path)
    elif item.fmt == "edgelist":
        g = load_edge_list(path)
    else:
        raise ValueError(f"unknown graph format '{item.fmt}'")
    return g, item.name or path


def _make_runner(item: PlanItem) -> tuple[Callable[[Graph], tuple[LabelArray, Optional[IterationStats]]], str, bool, bool]:
    """Resolve a plan item to (runner, variant label, sync flag, atomic flag)."""
    if item.algo == "contour":
        schedule = make_schedule(item.variant, item.high_order, item.warmup,
                                 sync=True if item.mode == "sync" else None,
                                 atomic=item.atomics)
        if item.mode not in ("sync", "async"):
            raise ValueError(f"unknown mode '{item.mode}'")
        if item.mode == "async" and schedule.variant == "C-Syn":
            raise ValueError("C-Syn always runs synchronously")

        def run(g: Graph):
            return run_contour(g, schedule, threads=item.threads, seed=item.seed)

        return run, schedule.variant, schedule.sync, schedule.atomic
    if item.algo == "fastsv":
        return (lambda g: fastsv(g)), "-", True, False
    if item.algo == "unionfind":
        return (lambda g: (rem_union_find(g), None)), "-", False, False
    if item.algo == "bfs":
        return (lambda g: (bfs_components(g), None)), "-", False, False
    raise ValueError(f"unknown algorithm '{item.algo}' (choose from {ALGORITHMS})")


def run_experiment(plan: Sequence[PlanItem], repeats: int = 3) -> list[ExperimentRecord]:
    """Execute a plan serially; wall time is the median over ``repeats``.

    Iteration statistics come from the first repeat (deterministic for
    sequential runs). A load failure or oracle mismatch flags the record and
    marks the suite failing, but the remaining items still run.
    """
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    records: list[ExperimentRecord] = []
    oracle_cache: dict[int, LabelArray] = {}
    for item in plan:
        try:
            g, name = _load_graph(item)
            runner, variant, sync, atomic = _make_runner(item)
        except (OSError, ValueError) as exc:
            records.append(ExperimentRecord(
                graph=item.name or str(item.graph), n=0, m=0,
                algorithm=item.algo, variant=item.variant, sync=False,
                atomic=False, threads=item.threads, sweeps_until_stable=0,
                sweeps_executed=0, wall_time_ms=0.0, components=0,
                label_checksum="", oracle_match=False, error=str(exc),
            ))
            continue
        labels: Optional[LabelArray] = None
        stats: Optional[IterationStats] = None
        times: list[float] = []
        for rep in range(repeats):
            started = time.perf_counter()
            out_labels, out_stats = runner(g)
            times.append(time.perf_counter() - started)
            if rep == 0:
                labels, stats = out_labels, out_stats
        oracle = oracle_cache.get(id(g))
        if oracle is None:
            oracle = rem_union_find(g)
            oracle_cache[id(g)] = oracle
        normalized = normalize_labels(labels)
        match = bool(np.array_equal(normalized, oracle))
        if stats is not None:
            until_stable, executed = stats.sweeps_until_stable, stats.sweeps_executed
        else:
            until_stable = executed = 1  # single-pass algorithms
        records.append(ExperimentRecord(
            graph=name, n=g.n, m=g.m, algorithm=item.algo, variant=variant,
            sync=sync, atomic=atomic, threads=item.threads,
            sweeps_until_stable=until_stable, sweeps_executed=executed,
            wall_time_ms=statistics.median(times) * 1000.0,
            components=int(summarize(normalized).count),
            label_checksum=label_checksum(normalized),
            oracle_match=match,
        ))
    return records


def write_csv(records: Iterable[ExperimentRecord], sink: Union[str, Path, IO[str]]) -> None:
    """Write records in the fixed CSV schema (RFC-4180-style quoting)."""
    if isinstance(sink, (str, Path)):
        with open(sink, "w", encoding="utf-8", newline="") as fh:
            _write_rows(records, fh)
    else:
        _write_rows(records, sink)


def _write_rows(records: Iterable[ExperimentRecord], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.graph, r.n, r.m, r.algorithm, r.variant,
            _fmt_bool(r.sync), _fmt_bool(r.atomic), r.threads,
            r.sweeps_until_stable, r.sweeps_executed,
            f"{r.wall_time_ms:.3f}", r.components, r.label_checksum,
            _fmt_bool(r.oracle_match),
        ])


def _fmt_bool(value: bool) -> str:
    return "true" if value else "false"


def parse_plan_file(source: Union[str, Path, IO[str]]) -> list[PlanItem]:
    """Parse a plan file: one experiment per line,

    ``graph_path,format,algo,variant,mode,atomics,threads``

    with ``#`` comments and blank lines skipped. ``variant`` is ``-`` for
    non-contour algorithms.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    else:
        lines = list(source)
    items: list[PlanItem] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 7:
            raise ValueError(f"plan line {lineno}: expected 7 fields, got {len(parts)}")
        path, fmt, algo, variant, mode, atomics, threads = parts
        if algo not in ALGORITHMS:
            raise ValueError(f"plan line {lineno}: unknown algorithm '{algo}'")
        if fmt not in ("edgelist", "mtx"):
            raise ValueError(f"plan line {lineno}: unknown format '{fmt}'")
        if mode not in ("sync", "async"):
            raise ValueError(f"plan line {lineno}: unknown mode '{mode}'")
        if atomics not in ("on", "off"):
            raise ValueError(f"plan line {lineno}: atomics must be on|off")
        if algo == "contour":
            variant = canonical_variant(variant)
        try:
            nthreads = int(threads)
        except ValueError:
            raise ValueError(f"plan line {lineno}: threads must be an integer")
        if nthreads < 1:
            raise ValueError(f"plan line {lineno}: threads must be >= 1")
        items.append(PlanItem(
            graph=path, fmt=fmt, algo=algo, variant=variant, mode=mode,
            atomics=(atomics == "on"), threads=nthreads,
        ))
    return items
