"""Graph data model, file ingestion, synthetic generators, and exact metrics.

The central type is :class:`Graph`, an immutable undirected graph stored both
as an edge list (the sweep order used by the label engines) and in CSR form
(used by traversal code). Vertex IDs are dense ``0..n-1``; loaders that remap
sparse external IDs keep the original numbering in ``id_map``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Iterator, Optional, Union

import numpy as np

from .errors import EdgeListParseError, MatrixMarketFormatError

__all__ = [
    "Graph",
    "GraphMetrics",
    "load_edge_list",
    "load_matrix_market",
    "generate",
    "permute_vertices",
    "exact_metrics",
]

TextSource = Union[str, Path, IO[str]]


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph with dense vertex IDs.

    ``edges`` is the edge sweep order: one row per stored undirected edge.
    The CSR arrays list every edge in both endpoints' neighbor ranges, so
    ``csr_neighbors`` has length ``2*m``. Arrays are marked read-only; the
    object is safe to share across threads.
    """

    n: int
    edges: np.ndarray        # (m, 2) int64
    csr_offsets: np.ndarray  # (n+1,) int64
    csr_neighbors: np.ndarray  # (2m,) int64
    id_map: Optional[np.ndarray] = None  # dense ID -> original external ID
    name: str = ""

    @property
    def m(self) -> int:
        """Number of stored undirected edges."""
        return int(self.edges.shape[0])

    def neighbors(self, v: int) -> np.ndarray:
        return self.csr_neighbors[self.csr_offsets[v]:self.csr_offsets[v + 1]]

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: np.ndarray | Iterable[tuple[int, int]],
        id_map: Optional[np.ndarray] = None,
        name: str = "",
    ) -> "Graph":
        """Build a graph (and its CSR adjacency) from an edge sequence."""
        edges = np.asarray(edges, dtype=np.int64)
        if edges.size == 0:
            edges = edges.reshape(0, 2)
        if edges.ndim != 2 or edges.shape[1] != 2:
            raise ValueError("edges must be a sequence of (u, v) pairs")
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        if edges.shape[0]:
            lo = int(edges.min())
            hi = int(edges.max())
            if lo < 0 or hi >= n:
                raise ValueError(
                    f"edge endpoint out of range: saw {lo if lo < 0 else hi}, n={n}"
                )
        offsets, neigh = _build_csr(n, edges)
        edges = np.ascontiguousarray(edges)
        for arr in (edges, offsets, neigh):
            arr.setflags(write=False)
        if id_map is not None:
            id_map = np.asarray(id_map, dtype=np.int64)
            if id_map.shape != (n,):
                raise ValueError("id_map must have one entry per vertex")
            id_map.setflags(write=False)
        return cls(n=n, edges=edges, csr_offsets=offsets,
                   csr_neighbors=neigh, id_map=id_map, name=name)


@dataclass(frozen=True)
class GraphMetrics:
    """Exact per-component structure: sizes, diameters, and their maximum.

    Components are keyed by their minimum vertex ID, listed ascending in
    ``representatives``. ``d_max`` is the largest exact diameter over all
    components; a singleton component has diameter 0.
    """

    component_count: int
    representatives: np.ndarray  # (k,) minimum vertex per component, ascending
    sizes: np.ndarray            # (k,)
    diameters: np.ndarray        # (k,)
    d_max: int = field(default=0)


def _build_csr(n: int, edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Every edge contributes both directions (a self-loop appears twice in
    # its own range), so csr_neighbors always has length 2*m.
    if edges.shape[0] == 0:
        return np.zeros(n + 1, dtype=np.int64), np.zeros(0, dtype=np.int64)
    src = np.concatenate([edges[:, 0], edges[:, 1]])
    dst = np.concatenate([edges[:, 1], edges[:, 0]])
    order = np.argsort(src, kind="stable")
    src = src[order]
    dst = dst[order]
    counts = np.bincount(src, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, np.ascontiguousarray(dst)


def _open_lines(source: TextSource) -> Iterator[str]:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            yield from fh
    else:
        yield from source


def _canonicalize(edges: np.ndarray) -> np.ndarray:
    """Reorient each pair as (min, max) without reordering rows."""
    if edges.shape[0] == 0:
        return edges
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    return np.column_stack([lo, hi])


def _dedupe_sorted(edges: np.ndarray) -> np.ndarray:
    """Drop repeated canonical edges; output is lexicographically sorted."""
    if edges.shape[0] == 0:
        return edges
    return np.unique(edges, axis=0)


def load_edge_list(
    source: TextSource,
    *,
    dedupe: bool = True,
    remap: bool = True,
) -> Graph:
    """Load a whitespace-separated edge list (``#``/``%`` lines are comments).

    Each stored edge is canonicalized to (min, max). With ``dedupe`` the edge
    sweep order is the sorted unique canonical order; without it, file order
    is kept (minus nothing). With ``remap``, non-contiguous IDs are densified
    by ascending original ID and the mapping recorded in ``id_map``.

    Raises :class:`EdgeListParseError` (with the line number) on malformed
    lines. Empty input yields the empty graph.
    """
    rows: list[tuple[int, int]] = []
    for lineno, raw in enumerate(_open_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(
                f"line {lineno}: expected two vertex IDs, got {len(parts)} tokens"
            )
        try:
            u = int(parts[0])
            v = int(parts[1])
        except ValueError as exc:
            raise EdgeListParseError(f"line {lineno}: non-integer token") from exc
        if u < 0 or v < 0:
            raise EdgeListParseError(f"line {lineno}: negative vertex ID")
        rows.append((u, v))

    if not rows:
        return Graph.from_edges(0, np.zeros((0, 2), dtype=np.int64))

    edges = _canonicalize(np.asarray(rows, dtype=np.int64))
    id_map: Optional[np.ndarray] = None
    if remap:
        ids = np.unique(edges)
        if ids[0] == 0 and ids[-1] == ids.size - 1:
            n = int(ids.size)
        else:
            # densify by ascending original ID
            edges = np.searchsorted(ids, edges)
            id_map = ids
            n = int(ids.size)
    else:
        n = int(edges.max()) + 1
    if dedupe:
        edges = _dedupe_sorted(edges)
    return Graph.from_edges(n, edges, id_map=id_map)


_MM_FIELDS = {"pattern", "real", "integer", "double"}
_MM_SYMMETRIES = {"general", "symmetric"}


def load_matrix_market(source: TextSource) -> Graph:
    """Load a Matrix Market coordinate file as an undirected graph.

    Accepts pattern or numeric fields (values are discarded) with general or
    symmetric symmetry. 1-based entries become 0-based canonical edges; for
    general symmetry, (i,j) and (j,i) collapse into one undirected edge, and
    diagonal entries become self-loops. Unsupported headers or declared/actual
    dimension mismatches raise :class:`MatrixMarketFormatError`.
    """
    lines = _open_lines(source)
    try:
        header = next(lines)
    except StopIteration:
        raise MatrixMarketFormatError("empty input: missing MatrixMarket header")
    tokens = header.strip().split()
    if len(tokens) != 5 or tokens[0].lower() != "%%matrixmarket":
        raise MatrixMarketFormatError("missing '%%MatrixMarket' header line")
    _, obj, fmt, fld, sym = (t.lower() for t in tokens)
    if obj != "matrix" or fmt != "coordinate":
        raise MatrixMarketFormatError(f"unsupported format '{obj} {fmt}' (need matrix coordinate)")
    if fld not in _MM_FIELDS:
        raise MatrixMarketFormatError(f"unsupported field '{fld}'")
    if sym not in _MM_SYMMETRIES:
        raise MatrixMarketFormatError(f"unsupported symmetry '{sym}'")

    dims: Optional[tuple[int, int, int]] = None
    rows: list[tuple[int, int]] = []
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        parts = line.split()
        if dims is None:
            if len(parts) != 3:
                raise MatrixMarketFormatError("size line must hold 'rows cols nnz'")
            try:
                nrows, ncols, nnz = (int(p) for p in parts)
            except ValueError as exc:
                raise MatrixMarketFormatError("non-integer size line") from exc
            if nrows != ncols:
                raise MatrixMarketFormatError(
                    f"adjacency matrix must be square, got {nrows}x{ncols}"
                )
            dims = (nrows, ncols, nnz)
            continue
        if len(parts) < 2:
            raise MatrixMarketFormatError("entry line must hold at least two indices")
        try:
            i = int(parts[0])
            j = int(parts[1])
        except ValueError as exc:
            raise MatrixMarketFormatError("non-integer entry indices") from exc
        n = dims[0]
        if not (1 <= i <= n and 1 <= j <= n):
            raise MatrixMarketFormatError(f"entry ({i},{j}) outside 1..{n}")
        rows.append((i - 1, j - 1))

    if dims is None:
        raise MatrixMarketFormatError("missing size line")
    if len(rows) != dims[2]:
        raise MatrixMarketFormatError(
            f"declared {dims[2]} entries but found {len(rows)}"
        )
    edges = np.asarray(rows, dtype=np.int64).reshape(len(rows), 2)
    edges = _dedupe_sorted(_canonicalize(edges))
    return Graph.from_edges(dims[0], edges)


def generate(
    kind: str,
    *,
    n: int | None = None,
    rows: int | None = None,
    cols: int | None = None,
    p: float | None = None,
    trees: int | None = None,
    seed: int | None = None,
) -> Graph:
    """Deterministic synthetic graph families for tests and benchmarks.

    kinds: ``path``, ``cycle``, ``grid2d`` (rows x cols), ``star`` (center 0),
    ``erdos_renyi`` (G(n, p)), ``forest`` (exactly ``trees`` random trees).
    The same (kind, params, seed) always yields the same graph.
    """
    if kind in ("path", "cycle", "star"):
        if n is None or n < 0:
            raise ValueError(f"{kind} requires n >= 0")
        if kind == "path":
            edges = _path_edges(n)
        elif kind == "cycle":
            edges = _path_edges(n)
            if n >= 3:
                edges = np.vstack([edges, [[0, n - 1]]])
        else:
            edges = np.column_stack([
                np.zeros(max(n - 1, 0), dtype=np.int64),
                np.arange(1, n, dtype=np.int64),
            ]) if n > 1 else np.zeros((0, 2), dtype=np.int64)
        return Graph.from_edges(n, edges, name=f"{kind}-{n}")

    if kind == "grid2d":
        if rows is None or cols is None or rows <= 0 or cols <= 0:
            raise ValueError("grid2d requires rows >= 1 and cols >= 1")
        return Graph.from_edges(rows * cols, _grid_edges(rows, cols),
                                name=f"grid2d-{rows}x{cols}")

    if kind == "erdos_renyi":
        if n is None or n < 0:
            raise ValueError("erdos_renyi requires n >= 0")
        if p is None or not (0.0 <= p <= 1.0):
            raise ValueError("erdos_renyi requires p in [0, 1]")
        return Graph.from_edges(n, _er_edges(n, p, seed),
                                name=f"er-{n}-p{p:g}-s{seed}")

    if kind == "forest":
        if n is None or n < 0:
            raise ValueError("forest requires n >= 0")
        t = 1 if trees is None else trees
        if n > 0 and not (1 <= t <= n):
            raise ValueError("forest requires 1 <= trees <= n")
        return Graph.from_edges(n, _forest_edges(n, t, seed),
                                name=f"forest-{n}-t{t}-s{seed}")

    raise ValueError(f"unknown graph kind '{kind}'")


def _path_edges(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros((0, 2), dtype=np.int64)
    i = np.arange(n - 1, dtype=np.int64)
    return np.column_stack([i, i + 1])


def _grid_edges(rows: int, cols: int) -> np.ndarray:
    r, c = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    vid = (r * cols + c).astype(np.int64)
    right = np.column_stack([vid[:, :-1].ravel(), vid[:, 1:].ravel()])
    down = np.column_stack([vid[:-1, :].ravel(), vid[1:, :].ravel()])
    if right.size == 0 and down.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    return np.vstack([right, down]).astype(np.int64)


def _er_edges(n: int, p: float, seed: int | None) -> np.ndarray:
    # Sample the edge count from Binomial(C(n,2), p), then that many distinct
    # vertex pairs uniformly: exactly the G(n, p) distribution without
    # touching all O(n^2) pairs.
    total = n * (n - 1) // 2
    if total == 0 or p == 0.0:
        return np.zeros((0, 2), dtype=np.int64)
    rng = np.random.default_rng(seed)
    count = total if p == 1.0 else int(rng.binomial(total, p))
    if count == 0:
        return np.zeros((0, 2), dtype=np.int64)
    if total <= 1_000_000:
        picked = np.sort(rng.choice(total, size=count, replace=False).astype(np.int64))
    else:
        picked = np.zeros(0, dtype=np.int64)
        while picked.size < count:
            need = count - picked.size
            draw = rng.integers(0, total, size=max(need + 16, int(need * 1.1)))
            picked = np.unique(np.concatenate([picked, draw]))
        if picked.size > count:
            picked = rng.choice(picked, size=count, replace=False)
            picked.sort()
    # linear index k -> pair (u, v), u < v, rows grouped by u: row u starts
    # at offset(u) = u*n - u*(u+1)/2. Invert with a float guess, then correct
    # in integer arithmetic (the guess is off by at most one).
    u = (n - 2 - np.floor(
        np.sqrt(-8.0 * picked + 4.0 * n * (n - 1) - 7.0) / 2.0 - 0.5
    )).astype(np.int64)
    np.clip(u, 0, n - 2, out=u)
    for _ in range(2):
        off = u * n - u * (u + 1) // 2
        u = np.where(picked < off, u - 1, u)
        off_next = (u + 1) * n - (u + 1) * (u + 2) // 2
        u = np.where(picked >= off_next, u + 1, u)
    v = picked - (u * n - u * (u + 1) // 2) + u + 1
    return np.column_stack([u, v])


def _forest_edges(n: int, trees: int, seed: int | None) -> np.ndarray:
    if n == 0:
        return np.zeros((0, 2), dtype=np.int64)
    rng = np.random.default_rng(seed)
    roots = np.sort(rng.choice(n, size=trees, replace=False))
    membership = rng.integers(0, trees, size=n)
    membership[roots] = np.arange(trees)
    rows: list[tuple[int, int]] = []
    for t in range(trees):
        members = np.nonzero(membership == t)[0]
        ordered = [int(roots[t])] + [int(v) for v in members if v != roots[t]]
        for k in range(1, len(ordered)):
            parent = ordered[int(rng.integers(0, k))]
            rows.append((min(parent, ordered[k]), max(parent, ordered[k])))
    if not rows:
        return np.zeros((0, 2), dtype=np.int64)
    return _dedupe_sorted(np.asarray(rows, dtype=np.int64))


def permute_vertices(g: Graph, perm: np.ndarray | Iterable[int]) -> Graph:
    """Relabel vertices: edge (u, v) becomes (perm[u], perm[v]).

    Topology (components, sizes, diameters) is preserved; edge row order is
    kept and pairs are not re-canonicalized.
    """
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (g.n,) or not np.array_equal(np.sort(perm), np.arange(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    edges = perm[g.edges] if g.m else g.edges
    id_map = None
    if g.id_map is not None:
        id_map = np.empty(g.n, dtype=np.int64)
        id_map[perm] = g.id_map
    return Graph.from_edges(g.n, edges, id_map=id_map, name=g.name)


def exact_metrics(g: Graph) -> GraphMetrics:
    """Exact component sizes and diameters via per-vertex BFS eccentricities.

    Intended for desk-scale graphs; cost is O(n * m) within each component.
    """
    from ._kernels import bfs_eccentricity  # deferred: numba compile on use

    comp = np.full(g.n, -1, dtype=np.int64)
    dist = np.full(g.n, -1, dtype=np.int64)
    queue = np.empty(g.n, dtype=np.int64)
    reps: list[int] = []
    sizes: list[int] = []
    diameters: list[int] = []
    for src in range(g.n):
        if comp[src] >= 0:
            continue
        bfs_eccentricity(g.csr_offsets, g.csr_neighbors, src, dist, queue)
        members = np.nonzero(dist >= 0)[0]
        comp[members] = src
        diameter = 0
        for v in members:
            dist[members] = -1
            ecc = bfs_eccentricity(g.csr_offsets, g.csr_neighbors, int(v), dist, queue)
            diameter = max(diameter, int(ecc))
        dist[members] = -1
        reps.append(src)
        sizes.append(int(members.size))
        diameters.append(diameter)
    diam_arr = np.asarray(diameters, dtype=np.int64)
    return GraphMetrics(
        component_count=len(reps),
        representatives=np.asarray(reps, dtype=np.int64),
        sizes=np.asarray(sizes, dtype=np.int64),
        diameters=diam_arr,
        d_max=int(diam_arr.max()) if diam_arr.size else 0,
    )
