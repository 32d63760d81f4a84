"""Comparison algorithms and the ground-truth oracle.

``rem_union_find`` is the trusted oracle used by every correctness check; it
is itself cross-validated against ``bfs_components`` in the test suite.
``fastsv`` is the synchronous hooking/shortcutting baseline. All of them
return labels normalized so every vertex carries the minimum vertex ID of
its component, which makes outputs directly comparable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from ._kernels import rem_components
from .engine import IterationStats, LabelArray
from .errors import IterationCapExceeded
from .graph import Graph

__all__ = [
    "ComponentSummary",
    "rem_union_find",
    "bfs_components",
    "fastsv",
    "normalize_labels",
    "summarize",
]


@dataclass(frozen=True)
class ComponentSummary:
    """Component count plus per-component representative (minimum ID) and size."""

    count: int
    representatives: np.ndarray  # ascending minimum vertex IDs
    sizes: np.ndarray


def rem_union_find(g: Graph) -> LabelArray:
    """Sequential union-find with Rem-style splicing, fully compressed.

    Returns normalized labels. Simple and non-iterative, which is why it
    serves as the oracle for everything else.
    """
    parent = rem_components(g.edges, g.n)
    return normalize_labels(parent)


def bfs_components(g: Graph) -> LabelArray:
    """Label components by repeated BFS from unvisited vertices in ID order.

    Visiting sources in ascending order makes each source its component's
    minimum, so the result is already normalized.
    """
    labels = np.full(g.n, -1, dtype=np.int64)
    offsets = g.csr_offsets
    neigh = g.csr_neighbors
    for src in range(g.n):
        if labels[src] >= 0:
            continue
        labels[src] = src
        frontier = np.asarray([src], dtype=np.int64)
        while frontier.size:
            starts = offsets[frontier]
            counts = offsets[frontier + 1] - starts
            total = int(counts.sum())
            if total == 0:
                break
            prefix = np.zeros(frontier.size, dtype=np.int64)
            np.cumsum(counts[:-1], out=prefix[1:])
            gather = np.repeat(starts - prefix, counts) + np.arange(total)
            reached = neigh[gather]
            fresh = np.unique(reached[labels[reached] < 0])
            labels[fresh] = src
            frontier = fresh
    return labels


def fastsv(g: Graph) -> tuple[LabelArray, IterationStats]:
    """Synchronous hooking/compressing baseline.

    Each iteration lowers, into a shadow array, the parent of each endpoint
    toward the other endpoint's grandparent (stochastic hooking), each
    endpoint itself toward the other endpoint's grandparent (aggressive
    hooking), and every vertex toward its own grandparent (shortcutting),
    then swaps. Converges when the grandparent array stops changing.
    """
    n = g.n
    parent = np.arange(n, dtype=np.int64)
    grand = parent.copy()
    w = g.edges[:, 0] if g.m else None
    v = g.edges[:, 1] if g.m else None
    cap = n + 2
    changed_counts: list[int] = []
    sweep_seconds: list[float] = []
    until_stable = 0
    it = 0
    while True:
        it += 1
        if it > cap:
            raise IterationCapExceeded(f"fastsv did not converge in {cap} iterations")
        started = time.perf_counter()
        nxt = parent.copy()
        if w is not None:
            gw = grand[w]
            gv = grand[v]
            np.minimum.at(nxt, parent[w], gv)  # stochastic hooking
            np.minimum.at(nxt, parent[v], gw)
            np.minimum.at(nxt, w, gv)          # aggressive hooking
            np.minimum.at(nxt, v, gw)
        np.minimum(nxt, grand, out=nxt)        # shortcutting
        changed = int(np.count_nonzero(nxt != parent))
        parent = nxt
        new_grand = parent[parent]
        sweep_seconds.append(time.perf_counter() - started)
        changed_counts.append(changed)
        if changed:
            until_stable = it
        if np.array_equal(new_grand, grand):
            break
        grand = new_grand
    stats = IterationStats(
        sweeps_executed=it,
        sweeps_until_stable=until_stable,
        changed_per_sweep=changed_counts,
        converged_by="grandparent-stable",
        sweep_seconds=sweep_seconds,
    )
    return normalize_labels(parent), stats


def normalize_labels(labels: LabelArray) -> LabelArray:
    """Map every vertex to the minimum vertex ID sharing its representative.

    Representatives are resolved by pointer jumping; a chain that does not
    reach a fixed point raises ValueError. Idempotent on its own output.
    """
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    if n == 0:
        return labels.copy()
    if labels.min() < 0 or labels.max() >= n:
        raise ValueError("labels reference vertices outside 0..n-1")
    rep = labels.copy()
    rounds = int(np.ceil(np.log2(max(n, 2)))) + 2
    for _ in range(rounds):
        nxt = rep[rep]
        if np.array_equal(nxt, rep):
            break
        rep = nxt
    if not np.array_equal(labels[rep], rep):
        raise ValueError("representative chains do not converge")
    mins = np.full(n, n, dtype=np.int64)
    np.minimum.at(mins, rep, np.arange(n, dtype=np.int64))
    return mins[rep]


def summarize(labels: LabelArray) -> ComponentSummary:
    """Count components and their sizes from normalized labels."""
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.shape[0]
    if n == 0:
        empty = np.zeros(0, dtype=np.int64)
        return ComponentSummary(count=0, representatives=empty, sizes=empty)
    if not np.array_equal(labels[labels], labels) or (labels > np.arange(n)).any():
        raise ValueError("labels are not normalized (expected per-class minima)")
    reps, sizes = np.unique(labels, return_counts=True)
    return ComponentSummary(count=int(reps.size), representatives=reps, sizes=sizes)
