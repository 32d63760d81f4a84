"""Compiled inner loops: edge sweeps, lock-free CAS, union-find, BFS.

Everything here is numba-jitted with ``nogil=True`` so worker threads get
real hardware parallelism. The compare-and-swap primitive is emitted as an
LLVM ``cmpxchg`` on the int64 array element, giving genuine lock-free
monotone updates for the atomic execution mode.
"""

from __future__ import annotations

import numpy as np
from numba import njit, types
from numba.core import cgutils
from numba.extending import intrinsic


@intrinsic
def _cas_i64(typingctx, arr_t, idx_t, expect_t, value_t):
    """cas(arr, i, expect, value) -> bool: atomically arr[i]=value if arr[i]==expect."""
    if not (isinstance(arr_t, types.Array) and arr_t.dtype == types.int64):
        return None
    sig = types.boolean(arr_t, types.intp, types.int64, types.int64)

    def codegen(context, builder, signature, args):
        arr, idx, expect, value = args
        ary = context.make_array(signature.args[0])(context, builder, arr)
        ptr = cgutils.get_item_pointer(context, builder, signature.args[0],
                                       ary, [idx], wraparound=False)
        pair = builder.cmpxchg(ptr, expect, value, "monotonic", "monotonic")
        return builder.extract_value(pair, 1)

    return sig, codegen


@njit(nogil=True, cache=True)
def sweep_edges(read, target, edges, lo, hi, offset, order, use_cas):
    """Apply the order-h minimum-mapping update to edges[lo:hi).

    ``read`` is the array label chains are walked on; ``target`` receives the
    lowered values. Asynchronous mode passes the same array for both. The
    traversal starts ``offset`` edges into the range and wraps, which lets
    parallel runs vary their interleaving without changing the partition.
    Chain walking stops early at fixed points (read[x] == x) so the cost per
    endpoint is O(min(order, chain length)). Self-loop edges are skipped.
    """
    span = hi - lo
    if span <= 0:
        return
    buf_w = np.empty(order, np.int64)
    buf_v = np.empty(order, np.int64)
    for k in range(span):
        e = lo + (k + offset) % span
        w = edges[e, 0]
        v = edges[e, 1]
        if w == v:
            continue
        # walk both chains: buf holds x_0..x_{h-1}, z-part is x_h
        c = w
        nw = 0
        for _ in range(order):
            buf_w[nw] = c
            nw += 1
            nxt = read[c]
            if nxt == c:
                break
            c = nxt
        zw = c
        c = v
        nv = 0
        for _ in range(order):
            buf_v[nv] = c
            nv += 1
            nxt = read[c]
            if nxt == c:
                break
            c = nxt
        zv = c
        z = zw if zw < zv else zv
        if use_cas:
            for i in range(nw):
                t = buf_w[i]
                old = target[t]
                while old > z:
                    if _cas_i64(target, t, old, z):
                        break
                    old = target[t]
            for i in range(nv):
                t = buf_v[i]
                old = target[t]
                while old > z:
                    if _cas_i64(target, t, old, z):
                        break
                    old = target[t]
        else:
            for i in range(nw):
                t = buf_w[i]
                if target[t] > z:
                    target[t] = z
            for i in range(nv):
                t = buf_v[i]
                if target[t] > z:
                    target[t] = z


@njit(nogil=True, cache=True)
def rem_components(edges, n):
    """Sequential union-find with Rem-style splicing, then full compression.

    Returns the parent array with every vertex pointing at its component's
    minimum vertex ID.
    """
    parent = np.arange(n)
    for e in range(edges.shape[0]):
        u = edges[e, 0]
        v = edges[e, 1]
        while parent[u] != parent[v]:
            if parent[u] < parent[v]:
                if v == parent[v]:
                    parent[v] = parent[u]
                    break
                nxt = parent[v]
                parent[v] = parent[u]
                v = nxt
            else:
                if u == parent[u]:
                    parent[u] = parent[v]
                    break
                nxt = parent[u]
                parent[u] = parent[v]
                u = nxt
    for v in range(n):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            nxt = parent[v]
            parent[v] = root
            v = nxt
    return parent


@njit(nogil=True, cache=True)
def bfs_eccentricity(offsets, neighbors, src, dist, queue):
    """BFS from src over CSR adjacency; fills dist (callers pre-fill with -1).

    Returns the eccentricity of src within its component.
    """
    head = 0
    tail = 0
    dist[src] = 0
    queue[tail] = src
    tail += 1
    ecc = 0
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if du > ecc:
            ecc = du
        for i in range(offsets[u], offsets[u + 1]):
            w = neighbors[i]
            if dist[w] < 0:
                dist[w] = du + 1
                queue[tail] = w
                tail += 1
    return ecc
