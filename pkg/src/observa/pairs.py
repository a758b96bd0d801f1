"""Auxiliary graphs over ordered node pairs, and the DAG algorithms run on them.

Pair ``(v1, v2)`` of an ``n``-node graph has index ``v1 * n + v2``. Every
kind uses the full ``n * n`` index space; kinds without the diagonal simply
leave diagonal indices isolated and exclude them from :attr:`PairGraph.pair_nodes`.

Kinds
-----
``H``
    all ordered pairs; ``(v1, v2) -> (w1, w2)`` iff one color has both
    ``v1 -> w1`` and ``v2 -> w2``.
``G2``
    ``H`` restricted to pairs of distinct nodes.
``G2tilde``
    pairs of distinct nodes; ``(v1, v2) -> (w1, w2)`` iff one color reaches
    both ``w1`` and ``w2`` from ``{v1, v2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .graph import ColoredDigraph

KINDS = ("G2", "G2tilde", "H")

# above this many base nodes the dense n^2 x n^2 construction gets too large
DENSE_LIMIT = 64


@dataclass(frozen=True, eq=False)
class PairGraph:
    kind: str
    graph: ColoredDigraph
    indptr: np.ndarray
    indices: np.ndarray

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def size(self) -> int:
        return self.n * self.n

    def pair(self, p: int) -> tuple[int, int]:
        return divmod(int(p), self.n)

    def index(self, v1: int, v2: int) -> int:
        return v1 * self.n + v2

    @cached_property
    def node_mask(self) -> np.ndarray:
        mask = np.ones(self.size, dtype=bool)
        if self.kind != "H" and self.n:
            mask[np.arange(self.n) * (self.n + 1)] = False
        return mask

    @property
    def pair_nodes(self) -> list[tuple[int, int]]:
        return [self.pair(p) for p in np.flatnonzero(self.node_mask)]

    @property
    def edge_count(self) -> int:
        return int(self.indices.size)

    @cached_property
    def rows(self) -> np.ndarray:
        return np.repeat(np.arange(self.size, dtype=np.int64), np.diff(self.indptr))

    def successors(self, p: int) -> np.ndarray:
        return self.indices[self.indptr[p]:self.indptr[p + 1]]

    def has_edge(self, p: int, q: int) -> bool:
        succ = self.successors(p)
        k = np.searchsorted(succ, q)
        return bool(k < succ.size and succ[k] == q)

    def edge_colors(self, p: int, q: int) -> tuple[int, ...]:
        """Colors witnessing the pair edge ``p -> q`` under this kind's rule."""
        (v1, v2), (w1, w2) = self.pair(p), self.pair(q)
        out = []
        for c, succ in enumerate(self.graph.successors):
            if self.kind == "G2tilde":
                reach = set(succ[v1]) | set(succ[v2])
                ok = w1 in reach and w2 in reach
            else:
                ok = w1 in succ[v1] and w2 in succ[v2]
            if ok:
                out.append(c)
        return tuple(out)

    def pair_edges(self) -> Iterator[tuple[tuple[int, int], tuple[int, int], tuple[int, ...]]]:
        for p, q in zip(self.rows, self.indices):
            yield self.pair(p), self.pair(q), self.edge_colors(p, q)

    def to_colored_digraph(self) -> ColoredDigraph:
        """The pair graph as an ordinary colored graph with nodes labelled ``"v1|v2"``."""
        nl = self.graph.node_labels
        keep = np.flatnonzero(self.node_mask)
        pos = {int(p): i for i, p in enumerate(keep)}
        labels = tuple(f"{nl[p // self.n]}|{nl[p % self.n]}" for p in keep)
        edges = sorted({(pos[int(p)], pos[int(q)], c)
                        for p, q in zip(self.rows, self.indices)
                        for c in self.edge_colors(p, q)})
        return ColoredDigraph(labels, self.graph.color_labels, tuple(edges))


def _csr(size: int, rows: np.ndarray, cols: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """CSR arrays from (row-major sorted, deduplicated) edge coordinates."""
    counts = np.bincount(rows, minlength=size) if size else np.zeros(0, dtype=np.int64)
    indptr = np.zeros(size + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, cols.astype(np.int64, copy=False)


def _adjacency(graph: ColoredDigraph) -> np.ndarray:
    a = np.zeros((graph.m, graph.n, graph.n), dtype=bool)
    if graph.edges:
        e = np.asarray(graph.edges, dtype=np.int64)
        a[e[:, 2], e[:, 0], e[:, 1]] = True
    return a


def _build_dense(graph: ColoredDigraph, kind: str) -> tuple[np.ndarray, np.ndarray]:
    n = graph.n
    size = n * n
    adj = np.zeros((size, size), dtype=bool)
    for a in _adjacency(graph):
        if kind == "G2tilde":
            # reach[v1, v2, x]: one edge of this color from v1 or v2 to x
            reach = a[:, None, :] | a[None, :, :]
            adj |= (reach[:, :, :, None] & reach[:, :, None, :]).reshape(size, size)
        else:
            adj |= (a[:, None, :, None] & a[None, :, None, :]).reshape(size, size)
    if kind != "H":
        diag = np.arange(n) * (n + 1)
        adj[diag, :] = False
        adj[:, diag] = False
    rows, cols = np.nonzero(adj)
    return _csr(size, rows, cols)


def _product_edges(src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, ...]:
    """All ordered pairs of edges ``(a -> x, b -> y)`` as four aligned arrays."""
    k = src.size
    i = np.repeat(np.arange(k), k)
    j = np.tile(np.arange(k), k)
    return src[i], src[j], dst[i], dst[j]


def _build_sparse(graph: ColoredDigraph, kind: str) -> tuple[np.ndarray, np.ndarray]:
    n = graph.n
    size = n * n
    keys = []
    e = np.asarray(graph.edges, dtype=np.int64).reshape(-1, 3)
    for c in range(graph.m):
        ec = e[e[:, 2] == c]
        src, dst = ec[:, 0], ec[:, 1]
        a, b, x, y = _product_edges(src, dst)
        keys.append((a * n + b) * size + (x * n + y))
        if kind == "G2tilde":
            # targets swapped between the two sources
            keys.append((b * n + a) * size + (x * n + y))
            # both targets from one source, paired with every other node
            same = (a == b) & (x != y)
            a1, x1, y1 = a[same], x[same], y[same]
            others = np.arange(n, dtype=np.int64)
            src_rep = np.repeat(a1, n)
            oth = np.tile(others, a1.size)
            tgt = np.repeat(x1 * n + y1, n)
            keys.append((src_rep * n + oth) * size + tgt)
            keys.append((oth * n + src_rep) * size + tgt)
    if keys:
        allk = np.unique(np.concatenate(keys))
    else:
        allk = np.zeros(0, dtype=np.int64)
    rows, cols = allk // size if size else allk, allk % size if size else allk
    if kind != "H":
        ok = (rows // n != rows % n) & (cols // n != cols % n)
        rows, cols = rows[ok], cols[ok]
    return _csr(size, rows, cols)


def build_pair_graph(graph: ColoredDigraph, kind: str, method: str = "auto") -> PairGraph:
    """Construct the ``kind`` pair graph of ``graph`` (see the module docstring)."""
    if kind not in KINDS:
        raise ValueError(f"unknown pair graph kind {kind!r}")
    if graph.unobservable:
        raise ValueError("graph has unobservable edges; apply epsilon_closure first")
    if method == "auto":
        method = "dense" if graph.n <= DENSE_LIMIT else "sparse"
    builder = {"dense": _build_dense, "sparse": _build_sparse}[method]
    indptr, indices = builder(graph, kind)
    return PairGraph(kind, graph, indptr, indices)


# --- algorithms on CSR graphs -------------------------------------------------

def _gather(indptr: np.ndarray, indices: np.ndarray, nodes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Out-neighbours of ``nodes`` as (source, target) arrays."""
    starts = indptr[nodes]
    lens = indptr[nodes + 1] - starts
    total = int(lens.sum())
    if total == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    offs = np.repeat(starts - np.cumsum(lens) + lens, lens) + np.arange(total)
    return np.repeat(nodes, lens), indices[offs]


def restrict(indptr: np.ndarray, indices: np.ndarray, keep: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Drop every edge with an endpoint outside ``keep`` (indices stay global)."""
    size = keep.size
    rows = np.repeat(np.arange(size, dtype=np.int64), np.diff(indptr))
    ok = keep[rows] & keep[indices]
    return _csr(size, rows[ok], indices[ok])


def reverse(indptr: np.ndarray, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    size = indptr.size - 1
    rows = np.repeat(np.arange(size, dtype=np.int64), np.diff(indptr))
    order = np.lexsort((rows, indices))
    return _csr(size, indices[order], rows[order])


def longest_path_layers(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Kahn's algorithm, one frontier at a time.

    Returns, per node, the edge count of the longest path ending there, or -1
    for nodes on a cycle or downstream of one.
    """
    size = indptr.size - 1
    indeg = np.bincount(indices, minlength=size).astype(np.int64)
    layer = np.full(size, -1, dtype=np.int64)
    frontier = np.flatnonzero(indeg == 0)
    depth = 0
    while frontier.size:
        layer[frontier] = depth
        _, nbrs = _gather(indptr, indices, frontier)
        if nbrs.size == 0:
            break
        np.subtract.at(indeg, nbrs, 1)
        cand = np.unique(nbrs)
        frontier = cand[indeg[cand] == 0]
        depth += 1
    return layer


def reachable(indptr: np.ndarray, indices: np.ndarray, sources: np.ndarray) -> np.ndarray:
    """Boolean mask of nodes reachable from ``sources`` in zero or more steps."""
    seen = np.zeros(indptr.size - 1, dtype=bool)
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    seen[frontier] = True
    while frontier.size:
        _, nbrs = _gather(indptr, indices, frontier)
        nbrs = np.unique(nbrs)
        frontier = nbrs[~seen[nbrs]]
        seen[frontier] = True
    return seen


def cycle_core(indptr: np.ndarray, indices: np.ndarray, layer: np.ndarray) -> np.ndarray:
    """Nodes left after peeling sources and sinks: each lies on or between cycles."""
    alive = layer < 0
    ind, idx = restrict(indptr, indices, alive)
    rind, ridx = reverse(ind, idx)
    back = longest_path_layers(rind, ridx)
    return alive & (back < 0)


def shortest_cycle(indptr: np.ndarray, indices: np.ndarray, core: np.ndarray) -> list[int]:
    """A cycle inside ``core``: a self-loop if one exists, else a shortest cycle
    through a core node found by walking forward from the lowest-indexed one."""
    nodes = np.flatnonzero(core)
    if nodes.size == 0:
        return []
    src, dst = _gather(indptr, indices, nodes)
    loops = src[src == dst]
    if loops.size:
        return [int(loops.min())]
    ind, idx = restrict(indptr, indices, core)
    # a core node may only sit between cycles; walk forward until one repeats
    visited: set[int] = set()
    root = int(nodes[0])
    while root not in visited:
        visited.add(root)
        root = int(idx[ind[root]])
    parent = np.full(core.size, -1, dtype=np.int64)
    seen = np.zeros(core.size, dtype=bool)
    seen[root] = True
    frontier = np.array([root], dtype=np.int64)
    while frontier.size:
        s, t = _gather(ind, idx, frontier)
        hit = s[t == root]
        if hit.size:
            cycle = [int(hit.min())]
            while cycle[-1] != root:
                cycle.append(int(parent[cycle[-1]]))
            return cycle[::-1]
        fresh = ~seen[t]
        s, t = s[fresh], t[fresh]
        t, first = np.unique(t, return_index=True)
        parent[t] = s[first]
        seen[t] = True
        frontier = t
    raise AssertionError("cycle core without a cycle")  # pragma: no cover
