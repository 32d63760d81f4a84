"""Independent scalar oracles used to derive expected test values.

Everything here is deliberately written in plain Python over plain lists,
separate from the package's compiled kernels and numpy paths, so tests that
compare the two are exercising genuinely different routes. scipy provides a
third, external route for components and distances.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _scipy_cc
from scipy.sparse.csgraph import shortest_path as _scipy_sp


def chain_walk(labels: list[int], x: int, order: int) -> tuple[list[int], int]:
    """First ``order`` chain vertices from x, plus the order-fold mapped value."""
    targets = [x]
    c = x
    for _ in range(order):
        nxt = labels[c]
        if nxt == c:
            break
        c = nxt
        targets.append(c)
    return targets[:order], c


def mm_step(target: list[int], read: list[int], w: int, v: int, order: int) -> bool:
    """One minimum-mapping application, evaluated step by step."""
    if w == v:
        return False
    tw, zw = chain_walk(read, w, order)
    tv, zv = chain_walk(read, v, order)
    z = min(zw, zv)
    changed = False
    for cell in tw + tv:
        if target[cell] > z:
            target[cell] = z
            changed = True
    return changed


def order_sequence(variant: str, high_order: int, warmup: int):
    """Yield the operator order for sweep 1, 2, 3, ..."""
    k = 0
    while True:
        k += 1
        if variant in ("c2", "csyn"):
            yield 2
        elif variant == "c1":
            yield 1
        elif variant == "cm":
            yield high_order
        elif variant == "c11mm":
            yield 1 if k <= warmup else high_order
        elif variant == "c1m1m":
            yield 1 if k % 2 == 1 else high_order
        else:
            raise ValueError(variant)


def simulate(
    n: int,
    edges: list[tuple[int, int]],
    variant: str,
    high_order: int = 8,
    warmup: int = 2,
    sync: bool = False,
):
    """Sequential sweep simulation; returns (labels, executed, until_stable,
    changed counts, per-sweep label snapshots)."""
    if variant == "csyn":
        sync = True
    labels = list(range(n))
    shadow = list(labels) if sync else labels
    orders = order_sequence(variant, high_order, warmup)
    executed = 0
    until_stable = 0
    changed_counts = []
    snapshots = [list(labels)]
    while True:
        executed += 1
        if executed > n + 2:
            raise RuntimeError("reference simulation exceeded iteration cap")
        order = next(orders)
        before = list(labels)
        for w, v in edges:
            mm_step(shadow, labels, w, v, order)
        if sync:
            changed = sum(1 for a, b in zip(shadow, labels) if a != b)
            labels[:] = shadow
        else:
            changed = sum(1 for a, b in zip(labels, before) if a != b)
        snapshots.append(list(labels))
        changed_counts.append(changed)
        if changed == 0:
            break
        until_stable = executed
        if converged(n, edges, labels):
            break
    return labels, executed, until_stable, changed_counts, snapshots


def converged(n: int, edges: list[tuple[int, int]], labels: list[int]) -> bool:
    if any(labels[labels[v]] != labels[v] for v in range(n)):
        return False
    return all(labels[w] == labels[v] for w, v in edges)


def component_labels(n: int, edges) -> np.ndarray:
    """scipy-based minimum-vertex component labels."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    proper = edges[edges[:, 0] != edges[:, 1]]
    if proper.size:
        adj = coo_matrix(
            (np.ones(len(proper)), (proper[:, 0], proper[:, 1])), shape=(n, n)
        ).tocsr()
    else:
        adj = coo_matrix((n, n)).tocsr()
    _, comp = _scipy_cc(adj, directed=False)
    mins = np.full(n, n, dtype=np.int64)
    np.minimum.at(mins, comp, np.arange(n, dtype=np.int64))
    return mins[comp]


def component_diameters(n: int, edges) -> tuple[int, dict[int, int]]:
    """scipy-based exact (d_max, {component minimum: diameter})."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    proper = edges[edges[:, 0] != edges[:, 1]]
    if proper.size:
        adj = coo_matrix(
            (np.ones(len(proper)), (proper[:, 0], proper[:, 1])), shape=(n, n)
        ).tocsr()
    else:
        adj = coo_matrix((n, n)).tocsr()
    labels = component_labels(n, edges)
    dist = _scipy_sp(adj, directed=False, unweighted=True)
    diams: dict[int, int] = {}
    for rep in np.unique(labels) if n else []:
        idx = np.nonzero(labels == rep)[0]
        sub = dist[np.ix_(idx, idx)]
        finite = sub[np.isfinite(sub)]
        diams[int(rep)] = int(finite.max()) if finite.size else 0
    d_max = max(diams.values()) if diams else 0
    return d_max, diams
