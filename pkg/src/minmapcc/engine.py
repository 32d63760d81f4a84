"""Minimum-mapping label engine: operators, schedules, sweeps, diagnostics.

A run owns a label array initialized to ``labels[v] = v`` and repeatedly
sweeps the edge list, lowering chain-mapped label cells toward the minimum
h-fold-mapped label of each edge's endpoints. Labels only ever decrease, so
at convergence every vertex carries the minimum vertex ID of its connected
component.

Variants differ only in the operator order used per sweep (see
:func:`make_schedule`), whether writes go to a shadow array swapped in after
the sweep (synchronous) or in place (asynchronous), and whether concurrent
lowering uses compare-and-swap retry loops (atomic) or plain conditional
stores that may lose a concurrent lowering but can never raise a label.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._kernels import sweep_edges
from .errors import IterationCapExceeded
from .graph import Graph

__all__ = [
    "LabelArray",
    "Schedule",
    "IterationStats",
    "ForestDiagnostics",
    "VARIANTS",
    "conditional_min_assign",
    "mm_order",
    "make_schedule",
    "run_contour",
    "early_convergence_check",
    "forest_diagnostics",
]

LabelArray = np.ndarray  # (n,) int64; labels[v] is a vertex in v's component

VARIANTS = ("C-Syn", "C-1", "C-2", "C-m", "C-11mm", "C-1m1m")

_ORDERED_VARIANTS = {"C-m", "C-11mm", "C-1m1m"}


@dataclass(frozen=True)
class Schedule:
    """Per-iteration operator orders plus execution-mode flags for one variant."""

    variant: str
    high_order: int = 1024
    warmup: int = 2
    sync: bool = False
    atomic: bool = True

    def order_for(self, sweep: int) -> int:
        """Operator order for 1-based sweep number ``sweep``; always >= 1."""
        v = self.variant
        if v in ("C-2", "C-Syn"):
            return 2
        if v == "C-1":
            return 1
        if v == "C-m":
            return self.high_order
        if v == "C-11mm":
            return 1 if sweep <= self.warmup else self.high_order
        if v == "C-1m1m":
            return 1 if sweep % 2 == 1 else self.high_order
        raise ValueError(f"unknown variant '{v}'")


@dataclass
class IterationStats:
    """Sweep accounting for one run.

    ``sweeps_until_stable`` is the last sweep that changed any label;
    convergence via the change flag costs one extra no-change sweep, the
    early check does not, so ``sweeps_executed`` is at most one larger.
    """

    sweeps_executed: int
    sweeps_until_stable: int
    changed_per_sweep: list[int] = field(default_factory=list)
    converged_by: str = "change-flag"
    sweep_seconds: list[float] = field(default_factory=list)


@dataclass
class ForestDiagnostics:
    """Structure of the pointer graph v -> labels[v].

    ``heights`` maps each root (labels[v] == v) to the longest chain length
    ending at it; ``class_sizes`` counts vertices per surviving label value;
    ``merged_min_count`` is the number of surviving label values.
    """

    roots: np.ndarray
    heights: dict[int, int]
    class_sizes: dict[int, int]
    merged_min_count: int


_ALIAS = {
    "csyn": "C-Syn", "c-syn": "C-Syn",
    "c1": "C-1", "c-1": "C-1",
    "c2": "C-2", "c-2": "C-2",
    "cm": "C-m", "c-m": "C-m",
    "c11mm": "C-11mm", "c-11mm": "C-11mm",
    "c1m1m": "C-1m1m", "c-1m1m": "C-1m1m",
}


def canonical_variant(name: str) -> str:
    canon = _ALIAS.get(name.strip().lower())
    if canon is None:
        raise ValueError(f"unknown variant '{name}' (choose from {', '.join(VARIANTS)})")
    return canon


def make_schedule(
    variant: str,
    high_order: int = 1024,
    warmup: int = 2,
    *,
    sync: Optional[bool] = None,
    atomic: bool = True,
) -> Schedule:
    """Build the per-iteration order schedule for a named variant.

    C-1, C-2 and C-m use a constant order (1, 2, ``high_order``); C-11mm runs
    ``warmup`` order-1 sweeps before switching to ``high_order``; C-1m1m
    alternates, odd sweeps at order 1. C-Syn is order 2 and forces
    synchronous updates; every other variant defaults to asynchronous.
    """
    canon = canonical_variant(variant)
    if canon in _ORDERED_VARIANTS and high_order < 2:
        raise ValueError(f"{canon} requires high_order >= 2, got {high_order}")
    if warmup < 1:
        raise ValueError(f"warmup must be >= 1, got {warmup}")
    if canon == "C-Syn":
        if sync is False:
            raise ValueError("C-Syn always runs synchronously")
        sync = True
    elif sync is None:
        sync = False
    return Schedule(variant=canon, high_order=high_order, warmup=warmup,
                    sync=sync, atomic=atomic)


_cas_lock = threading.Lock()


def conditional_min_assign(
    labels: LabelArray,
    cells: Sequence[int],
    value: int,
    atomic: bool = False,
) -> bool:
    """Lower every referenced cell holding a value > ``value`` down to it.

    Returns whether any cell changed. In atomic mode each lowering runs a
    compare-and-swap retry loop so a concurrent lowering is never lost; the
    plain mode uses an unguarded conditional store. This is the scalar form
    of the update; the sweep kernels apply the same rule natively.
    """
    changed = False
    if atomic:
        for i in cells:
            while True:
                old = int(labels[i])
                if old <= value:
                    break
                with _cas_lock:
                    if labels[i] == old:
                        labels[i] = value
                        changed = True
                        break
                # lost the race; reread and retry
    else:
        for i in cells:
            if labels[i] > value:
                labels[i] = value
                changed = True
    return changed


def _walk_chain(read: LabelArray, x: int, order: int) -> tuple[list[int], int]:
    """Chain x, read[x], read^2[x], ... capped at ``order`` steps.

    Returns (the first ``order`` chain vertices, stopping early at a fixed
    point, and the order-fold mapped value used for the minimum).
    """
    targets: list[int] = []
    c = int(x)
    for _ in range(order):
        targets.append(c)
        nxt = int(read[c])
        if nxt == c:
            break
        c = nxt
    return targets, c


def mm_order(
    target: LabelArray,
    read: LabelArray,
    w: int,
    v: int,
    order: int,
    atomic: bool = False,
) -> bool:
    """Apply the order-h minimum-mapping update for edge (w, v).

    Walks both endpoint chains on ``read``, takes the minimum of the two
    h-fold-mapped labels, and conditionally lowers every chain vertex's cell
    in ``target``. Asynchronous callers pass the same array for both. A
    self-loop is inert and returns False.
    """
    if order < 1:
        raise ValueError("operator order must be >= 1")
    if w == v:
        return False
    targets_w, zw = _walk_chain(read, w, order)
    targets_v, zv = _walk_chain(read, v, order)
    return conditional_min_assign(target, targets_w + targets_v,
                                  min(zw, zv), atomic=atomic)


_pools: dict[int, ThreadPoolExecutor] = {}
_pools_lock = threading.Lock()


def _pool(workers: int) -> ThreadPoolExecutor:
    with _pools_lock:
        pool = _pools.get(workers)
        if pool is None:
            pool = ThreadPoolExecutor(max_workers=workers,
                                      thread_name_prefix="minmapcc")
            _pools[workers] = pool
        return pool


def run_contour(
    g: Graph,
    schedule: Schedule,
    threads: int = 1,
    seed: Optional[int] = None,
) -> tuple[LabelArray, IterationStats]:
    """Run minimum-mapping sweeps to convergence.

    With ``threads == 1`` edges are processed strictly in sweep order (the
    deterministic reference mode). With more threads each worker owns a
    contiguous static chunk of the edge list; ``seed`` only rotates each
    worker's traversal start within its chunk, perturbing interleavings
    without changing the partition.

    Returns the final labels (the minimum vertex ID of each component) plus
    per-sweep statistics. Raises :class:`IterationCapExceeded` after n+2
    sweeps; that cap never fires on valid inputs.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    n = g.n
    m = g.m
    edges = g.edges
    labels = np.arange(n, dtype=np.int64)
    shadow = labels.copy() if schedule.sync else None
    workers = max(1, min(threads, m))
    rng = np.random.default_rng(seed) if (seed is not None and workers > 1) else None
    cap = n + 2
    changed_counts: list[int] = []
    sweep_seconds: list[float] = []
    until_stable = 0
    sweep = 0
    while True:
        sweep += 1
        if sweep > cap:
            raise IterationCapExceeded(
                f"no convergence after {cap} sweeps on n={n}, m={m}"
            )
        order = int(schedule.order_for(sweep))
        started = time.perf_counter()
        if schedule.sync:
            read, target = labels, shadow
            before = labels
        else:
            read = target = labels
            before = labels.copy()
        if workers == 1:
            sweep_edges(read, target, edges, 0, m, 0, order, schedule.atomic)
        else:
            pool = _pool(workers)
            futures = []
            for wi in range(workers):
                lo = wi * m // workers
                hi = (wi + 1) * m // workers
                off = int(rng.integers(0, hi - lo)) if (rng is not None and hi > lo) else 0
                futures.append(pool.submit(
                    sweep_edges, read, target, edges, lo, hi, off, order,
                    schedule.atomic,
                ))
            for f in futures:
                f.result()
        changed = int(np.count_nonzero(target != before))
        if schedule.sync:
            labels[:] = shadow
        sweep_seconds.append(time.perf_counter() - started)
        changed_counts.append(changed)
        if changed == 0:
            converged_by = "change-flag"
            break
        until_stable = sweep
        if early_convergence_check(g, labels, parallel=workers > 1):
            converged_by = "early-check"
            break
    stats = IterationStats(
        sweeps_executed=sweep,
        sweeps_until_stable=until_stable,
        changed_per_sweep=changed_counts,
        converged_by=converged_by,
        sweep_seconds=sweep_seconds,
    )
    return labels, stats


def early_convergence_check(g: Graph, labels: LabelArray,
                            parallel: bool = False) -> bool:
    """True iff labels are idempotent and both endpoints of every edge agree.

    This form is sound for every operator order (for order 2 it matches the
    operator-specific check) and lets a run exit without spending a final
    no-change sweep.
    """
    if labels.shape[0] != g.n:
        raise ValueError("label array length does not match vertex count")
    if g.n == 0:
        return True
    if not parallel or g.n < 1 << 16:
        if not np.array_equal(labels[labels], labels):
            return False
        if g.m == 0:
            return True
        return bool(np.array_equal(labels[g.edges[:, 0]], labels[g.edges[:, 1]]))

    pool = _pool(4)

    def idempotent(lo: int, hi: int) -> bool:
        part = labels[lo:hi]
        return bool(np.array_equal(labels[part], part))

    def edges_agree(lo: int, hi: int) -> bool:
        part = g.edges[lo:hi]
        return bool(np.array_equal(labels[part[:, 0]], labels[part[:, 1]]))

    futures = []
    for lo, hi in _chunks(g.n, 4):
        futures.append(pool.submit(idempotent, lo, hi))
    for lo, hi in _chunks(g.m, 4):
        futures.append(pool.submit(edges_agree, lo, hi))
    return all(f.result() for f in futures)


def _chunks(total: int, parts: int) -> list[tuple[int, int]]:
    return [(i * total // parts, (i + 1) * total // parts)
            for i in range(parts) if i * total // parts < (i + 1) * total // parts]


def forest_diagnostics(labels: LabelArray) -> ForestDiagnostics:
    """Roots, per-root tree heights, and label-class sizes of a pointer graph.

    Raises :class:`IterationCapExceeded` if chain walking detects a cycle,
    which cannot happen for labels produced by a run.
    """
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    if n and (labels.min() < 0 or labels.max() >= n):
        raise ValueError("labels reference vertices outside 0..n-1")
    vertex = np.arange(n, dtype=np.int64)
    cur = labels.copy()
    depth = (cur != vertex).astype(np.int64)
    for _ in range(n + 1):
        nxt = labels[cur]
        moving = nxt != cur
        if not moving.any():
            break
        depth += moving
        cur = nxt
    else:
        raise IterationCapExceeded("cycle detected in pointer graph")
    roots = np.nonzero(labels == vertex)[0]
    height = np.zeros(n, dtype=np.int64)
    if n:
        np.maximum.at(height, cur, depth)
    values, counts = np.unique(labels, return_counts=True)
    return ForestDiagnostics(
        roots=roots,
        heights={int(r): int(height[r]) for r in roots},
        class_sizes={int(x): int(c) for x, c in zip(values, counts)},
        merged_min_count=int(values.size),
    )
