"""Instances for tests and benchmarks: named examples, the quadratic worst-case
family, seeded random graphs, and the two hardness-reduction constructions."""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass, field
from typing import Iterable

from .graph import ColoredDigraph, Digraph, GraphError


@dataclass(frozen=True)
class UndirectedGraph:
    nodes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # sorted pairs, u < v

    @classmethod
    def build(cls, nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        nodes = tuple(sorted(set(nodes)))
        pairs = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if u not in nodes or v not in nodes:
                raise GraphError(f"edge ({u}, {v}) has a dangling endpoint")
            pairs.add((min(u, v), max(u, v)))
        return cls(nodes, tuple(sorted(pairs)))

    def triangles(self) -> list[tuple[int, int, int]]:
        es = set(self.edges)
        return [t for t in itertools.combinations(self.nodes, 3)
                if {(t[0], t[1]), (t[0], t[2]), (t[1], t[2])} <= es]

    def is_connected(self) -> bool:
        if not self.nodes:
            return True
        adj = {v: set() for v in self.nodes}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {self.nodes[0]}, [self.nodes[0]]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == len(self.nodes)


def complete_graph(k: int) -> UndirectedGraph:
    return UndirectedGraph.build(range(k), itertools.combinations(range(k), 2))


def cycle_graph(k: int) -> UndirectedGraph:
    return UndirectedGraph.build(range(k), [(i, (i + 1) % k) for i in range(k)])


def paw_graph() -> UndirectedGraph:
    """A triangle with a pendant edge."""
    return UndirectedGraph.build(range(4), [(0, 1), (0, 2), (1, 2), (2, 3)])


def undirected_by_name(name: str) -> UndirectedGraph:
    mo = re.fullmatch(r"([KC])(\d+)", name)
    if mo:
        k = int(mo.group(2))
        return complete_graph(k) if mo.group(1) == "K" else cycle_graph(k)
    if name == "paw":
        return paw_graph()
    raise GraphError(f"unknown undirected graph {name!r} (try K<k>, C<k>, paw)")


# --- colored instances -----------------------------------------------------------

def worst_case_family(n: int) -> ColoredDigraph:
    """Observable graph on nodes ``1..n`` needing about ``n(n-1)/2`` observations.

    For ``i = 1..n-2``, color ``A_i`` has edges ``i+1 -> i+2, ..., n-1 -> n``
    and the loop ``i -> i``; color ``B_i`` has ``i -> i+1`` and ``n -> i+2``.
    """
    if n < 3:
        raise GraphError("worst_case_family needs n >= 3")
    colors, edges = [], []
    for i in range(1, n - 1):
        a, b = len(colors), len(colors) + 1
        colors += [f"A{i}", f"B{i}"]
        edges += [(j, j + 1, a) for j in range(i + 1, n)]
        edges.append((i, i, a))
        edges += [(i, i + 1, b), (n, i + 2, b)]
    return ColoredDigraph.build([str(v) for v in range(1, n + 1)], colors,
                                [(u - 1, v - 1, c) for u, v, c in edges])


def worst_case_word(n: int) -> list[str]:
    """``A1^(n-2) B1 A2^(n-3) B2 ... A(n-2) B(n-2)``, of length ``n(n-1)/2 - 1``."""
    word = []
    for i in range(1, n - 1):
        word += [f"A{i}"] * (n - 1 - i) + [f"B{i}"]
    return word


def star(k: int) -> ColoredDigraph:
    """Center ``c`` with leaves ``l1..lk``; ``S`` goes out to the leaves, ``D`` comes back."""
    if k < 1:
        raise GraphError("star needs at least one leaf")
    edges = [(0, i, 0) for i in range(1, k + 1)] + [(i, 0, 1) for i in range(1, k + 1)]
    return ColoredDigraph.build(["c"] + [f"l{i}" for i in range(1, k + 1)], ["S", "D"], edges)


NAMED = {
    "loop1": lambda: ColoredDigraph.build(["0"], ["a"], [(0, 0, 0)]),
    "twocyc": lambda: ColoredDigraph.build(["0", "1"], ["a"], [(0, 1, 0), (1, 0, 0)]),
    "chain": lambda: ColoredDigraph.build(["0", "1", "2"], ["a", "b"], [(0, 1, 0), (1, 2, 1)]),
    "amb": lambda: ColoredDigraph.build(["0", "1", "2"], ["a"], [(0, 1, 0), (0, 2, 0)]),
    # no separated cycles, yet G^k never pins the agent down
    "shift": lambda: ColoredDigraph.build(["a", "b", "c"], ["G", "R"],
                                          [(0, 1, 0), (1, 2, 0), (1, 1, 0), (2, 0, 1)]),
}


def named_example(name: str) -> ColoredDigraph:
    """``loop1``, ``twocyc``, ``chain``, ``amb``, ``shift`` or ``star(k)`` (also ``star2``)."""
    mo = re.fullmatch(r"star\(?(\d+)\)?", name)
    if mo:
        return star(int(mo.group(1)))
    try:
        return NAMED[name]()
    except KeyError:
        raise GraphError(f"unknown example {name!r}") from None


def color_names(m: int) -> list[str]:
    if m <= 26:
        return [chr(ord("a") + i) for i in range(m)]
    return [f"c{i}" for i in range(m)]


def random_colored_graph(n: int, m: int, p: float, seed: int) -> ColoredDigraph:
    """Each triple ``(u, v, c)`` in lexicographic order becomes an edge when the
    next draw of ``random.Random(seed)`` is below ``p``. Nodes are ``"0".."n-1"``,
    colors ``a, b, ...`` (``c0, c1, ...`` beyond 26)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability {p} outside [0, 1]")
    if n < 0 or m < 1:
        raise ValueError("need n >= 0 and m >= 1")
    rng = random.Random(seed)
    edges = [(u, v, c) for u in range(n) for v in range(n) for c in range(m)
             if rng.random() < p]
    return ColoredDigraph.build(n, color_names(m), edges)


# --- reductions ------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionArtifact:
    output: Digraph
    node_roles: dict[str, str]
    metadata: dict = field(default_factory=dict)


class _Builder:
    def __init__(self):
        self.labels: list[str] = []
        self.roles: dict[str, str] = {}
        self.edges: list[tuple[int, int]] = []

    def node(self, label: str, role: str) -> int:
        self.labels.append(label)
        self.roles[label] = role
        return len(self.labels) - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def digraph(self) -> Digraph:
        return Digraph.build(self.labels, self.edges)


def reduce_3colorability(g: UndirectedGraph) -> ReductionArtifact:
    """Digraph that can be made observable with 3 node colors iff ``g`` is 3-colorable.

    Real node ``v`` per node; per edge ``e = {a, b}`` a node ``e'`` pointing at
    both endpoints and a node ``e''`` pointing at ``e'``; the ``e''`` nodes are
    chained in edge order; every real node gets a two-node tail back to the
    first ``e''``.
    """
    if not g.edges:
        raise GraphError("reduce_3colorability needs at least one edge")
    b = _Builder()
    real = {v: b.node(f"v{v}", "real") for v in g.nodes}
    prime = [b.node(f"e{u}_{v}'", "v'_e") for u, v in g.edges]
    dprime = [b.node(f"e{u}_{v}''", "v''_e") for u, v in g.edges]
    for (u, v), p in zip(g.edges, prime):
        b.edge(p, real[u])
        b.edge(p, real[v])
    for p, d in zip(prime, dprime):
        b.edge(d, p)
    for d1, d2 in zip(dprime, dprime[1:]):
        b.edge(d1, d2)
    for v in g.nodes:
        g1 = b.node(f"g{v}a", "grey")
        g2 = b.node(f"g{v}b", "grey")
        b.edge(real[v], g1)
        b.edge(g1, g2)
        b.edge(g2, dprime[0])
    return ReductionArtifact(b.digraph(), b.roles,
                             {"n": len(g.nodes), "s": len(g.edges)})


def three_coloring_recipe(g: UndirectedGraph, art: ReductionArtifact,
                          coloring: dict[int, int]) -> dict[int, int]:
    """Node colors making the reduction observable, from a proper 3-coloring of ``g``
    (colors 0 = red, 1 = blue, 2 = green): real nodes keep theirs, ``e'`` blue,
    ``e''`` red, tails green."""
    for u, v in g.edges:
        if coloring[u] == coloring[v]:
            raise GraphError(f"not a proper coloring: edge ({u}, {v})")
    labels = art.output.node_labels
    fixed = {"v'_e": 1, "v''_e": 0, "grey": 2}
    out = {}
    for i, lab in enumerate(labels):
        role = art.node_roles[lab]
        out[i] = coloring[int(lab[1:])] if role == "real" else fixed[role]
    return out


def _tree(b: _Builder, leaves: list[int], copy: int, edges_out: list, path=()) -> int:
    """Left-complete binary tree over ``leaves``; single-leaf subtrees are contracted."""
    if len(leaves) == 1:
        return leaves[0]
    half = 1 << (math.ceil(math.log2(len(leaves))) - 1)
    node = b.node(f"t{copy}_{''.join(map(str, path)) or 'root'}", "tree-internal")
    for bit, part in ((0, leaves[:half]), (1, leaves[half:])):
        child = _tree(b, part, copy, edges_out, path + (bit,))
        b.edge(node, child)
        edges_out.append((node, child, bit))
    return node


def reduce_monochromatic_triangle(g: UndirectedGraph,
                                  connector_levels: int | None = None) -> ReductionArtifact:
    """Digraph that can be made partly observable with 2 edge colors iff the
    edges of ``g`` can be 2-colored without a monochromatic triangle.

    One real edge ``E_i`` per edge; ``2S + 1`` copies of a binary tree of depth
    ``ceil(log2 S)`` whose leaves ``T_j`` point at the sources of their
    triangle's real edges; a connector of ``N + 3`` levels of three nodes leads
    from the real-edge sinks back to every root.

    With the ``N + 3`` default, the connector's run of ``N + 2`` D-edges can be
    imitated by an all-D tree path followed by D-colored leaf and real edges,
    so :func:`triangle_coloring_recipe` cannot make ``K3`` (or any full tree)
    partly observable; ``connector_levels=N + 4`` removes the collision.
    """
    tris = g.triangles()
    if not tris:
        raise GraphError("reduce_monochromatic_triangle needs a triangle")
    S = len(tris)
    N = math.ceil(math.log2(S)) if S > 1 else 0
    copies = 2 * S + 1
    b = _Builder()
    edge_pos = {e: i for i, e in enumerate(g.edges)}
    src, snk = [], []
    for i, (u, v) in enumerate(g.edges):
        src.append(b.node(f"E{i}s", "E_i-endpoint"))
        snk.append(b.node(f"E{i}t", "E_i-endpoint"))
        b.edge(src[-1], snk[-1])

    roots, tree_edges, leaf_edges = [], [], []
    for k in range(copies):
        leaves = []
        for j, (x, y, z) in enumerate(tris):
            t = b.node(f"T{j}_{k}", "T_i")
            leaves.append(t)
            for e in ((x, y), (x, z), (y, z)):
                b.edge(t, src[edge_pos[e]])
                leaf_edges.append((t, src[edge_pos[e]], j, edge_pos[e]))
        roots.append(_tree(b, leaves, k, tree_edges))

    if connector_levels is None:
        connector_levels = N + 3
    if connector_levels < 2:
        raise GraphError("the connector needs at least two levels")
    levels = [[b.node(f"L{lvl}_{j}", "connector") for j in range(3)]
              for lvl in range(1, connector_levels + 1)]
    for i, s in enumerate(snk):
        b.edge(s, levels[0][i % 3])
    for here, there in zip(levels, levels[1:]):
        for x in here:
            for y in there:
                b.edge(x, y)
    for x in levels[-1]:
        for r in roots:
            b.edge(x, r)

    meta = {"s": len(g.edges), "S": S, "N": N, "copies": copies,
            "connector_levels": connector_levels,
            "roots": roots, "levels": levels, "tree_edges": tree_edges,
            "leaf_edges": leaf_edges, "real_edges": list(zip(src, snk)),
            "triangles": tris, "edges": list(g.edges)}
    return ReductionArtifact(b.digraph(), b.roles, meta)


def triangle_coloring_recipe(art: ReductionArtifact, edge_coloring: dict[tuple[int, int], int]
                             ) -> dict[tuple[int, int], int]:
    """Edge colors (0 = D, 1 = S) making the triangle reduction partly observable,
    from a 2-coloring of ``g``'s edges without monochromatic triangles.

    Real edges keep their colors; a tree node's first child edge is S and its
    second D, so the only all-D root-to-leaf path is the rightmost one, which
    is shorter than ``N`` unless the tree is full; of the three leaf edges, the
    two leading to same-colored real edges get D and S and the third D; the
    connector is D except for S on sink exits and root entries.
    """
    D, S_ = 0, 1
    meta = art.metadata
    out: dict[tuple[int, int], int] = {}
    for (s, t), e in zip(meta["real_edges"], meta["edges"]):
        out[(s, t)] = edge_coloring[e]
    for parent, child, bit in meta["tree_edges"]:
        out[(parent, child)] = 1 - bit
    by_leaf: dict[int, list] = {}
    for t, s, j, i in meta["leaf_edges"]:
        by_leaf.setdefault(t, []).append((s, edge_coloring[meta["edges"][i]]))
    for t, outs in by_leaf.items():
        cols = [c for _, c in outs]
        if len(set(cols)) == 1:
            raise GraphError(f"monochromatic triangle under leaf {art.output.node_labels[t]}")
        # the two real edges sharing a color get different colors; the third is free
        major = max(set(cols), key=cols.count)
        pair = [s for s, c in outs if c == major]
        other = [s for s, c in outs if c != major][0]
        out[(t, pair[0])], out[(t, pair[1])], out[(t, other)] = D, S_, D
    levels = meta["levels"]
    for _, snk in meta["real_edges"]:
        for u, v in art.output.edges:
            if u == snk:
                out[(u, v)] = S_
    for here, there in zip(levels, levels[1:]):
        for x in here:
            for y in there:
                out[(x, y)] = D
    for x in levels[-1]:
        for r in meta["roots"]:
            out[(x, r)] = S_
    missing = set(art.output.edges) - set(out)
    if missing:
        raise AssertionError(f"recipe left edges uncolored: {sorted(missing)[:5]}")
    return out
