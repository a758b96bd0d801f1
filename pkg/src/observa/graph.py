"""Edge-colored directed graphs and the structural operations on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int, int]


class GraphError(ValueError):
    """Raised when a graph (or a word applied to it) is structurally invalid."""


@dataclass(frozen=True)
class Issue:
    severity: str  # "error" | "warning"
    message: str
    location: str = ""


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(i.severity == "error" for i in self.issues)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class ColoredDigraph:
    """A directed graph whose edges carry colors.

    Nodes and colors are dense integers ``0..n-1`` / ``0..m-1``; ``node_labels``
    and ``color_labels`` give their external names. An edge with several colors
    is stored as several ``(u, v, c)`` triples. ``unobservable`` holds uncolored
    ``(u, v)`` transitions, which :func:`epsilon_closure` eliminates.

    The constructor does not check anything; call :func:`validate` (or use
    :meth:`build`, which raises on errors).
    """

    node_labels: tuple[str, ...]
    color_labels: tuple[str, ...]
    edges: tuple[Edge, ...]
    unobservable: tuple[tuple[int, int], ...] = ()

    @classmethod
    def build(
        cls,
        nodes: int | Sequence[str],
        colors: int | Sequence[str],
        edges: Iterable[Edge] = (),
        unobservable: Iterable[tuple[int, int]] = (),
    ) -> "ColoredDigraph":
        if isinstance(nodes, int):
            nodes = [str(i) for i in range(nodes)]
        if isinstance(colors, int):
            colors = [str(i) for i in range(colors)]
        g = cls(
            tuple(nodes),
            tuple(colors),
            tuple(sorted(tuple(e) for e in edges)),
            tuple(sorted(tuple(e) for e in unobservable)),
        )
        report = validate(g)
        if not report.ok:
            raise GraphError("; ".join(i.message for i in report.issues))
        return g

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @property
    def m(self) -> int:
        return len(self.color_labels)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def successors(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """``successors[c][u]``: sorted targets of the ``c``-colored edges out of ``u``."""
        out = [[[] for _ in range(self.n)] for _ in range(self.m)]
        for u, v, c in sorted(self.edge_set):
            out[c][u].append(v)
        return tuple(tuple(tuple(s) for s in row) for row in out)

    @cached_property
    def successor_masks(self) -> tuple[tuple[int, ...], ...]:
        """Same as :attr:`successors`, as integer bitsets over node indices."""
        return tuple(
            tuple(sum(1 << v for v in targets) for targets in row)
            for row in self.successors
        )

    def node_index(self, label: str) -> int:
        try:
            return self._node_index[label]
        except KeyError:
            raise GraphError(f"unknown node {label!r}") from None

    def color_index(self, label: str) -> int:
        try:
            return self._color_index[label]
        except KeyError:
            raise GraphError(f"unknown color {label!r}") from None

    @cached_property
    def _node_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.node_labels)}

    @cached_property
    def _color_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.color_labels)}

    def check_word(self, word: Iterable[int]) -> tuple[int, ...]:
        word = tuple(word)
        for c in word:
            if not (isinstance(c, int) and 0 <= c < self.m):
                raise GraphError(f"undeclared color {c!r}")
        return word

    def word_from_labels(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.color_index(lab) for lab in labels)

    def word_labels(self, word: Iterable[int]) -> list[str]:
        return [self.color_labels[c] for c in word]

    def _key(self):
        return (self.node_labels, self.color_labels, self.edge_set,
                frozenset(self.unobservable))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredDigraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (f"ColoredDigraph(n={self.n}, m={self.m}, edges={len(self.edges)}, "
                f"unobservable={len(self.unobservable)})")


@dataclass(frozen=True)
class Digraph:
    """An uncolored directed graph: the input of the coloring-design solvers."""

    node_labels: tuple[str, ...]
    edges: tuple[tuple[int, int], ...] = field(default=())

    @classmethod
    def build(cls, nodes: int | Sequence[str], edges: Iterable[tuple[int, int]]) -> "Digraph":
        if isinstance(nodes, int):
            nodes = [str(i) for i in range(nodes)]
        edges = tuple(sorted({(int(u), int(v)) for u, v in edges}))
        n = len(nodes)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has a dangling endpoint")
        return cls(tuple(nodes), edges)

    @property
    def n(self) -> int:
        return len(self.node_labels)

    @classmethod
    def of(cls, g: ColoredDigraph) -> "Digraph":
        """Forget the colors of ``g`` (parallel differently-colored edges merge)."""
        return cls.build(g.node_labels, [(u, v) for u, v, _ in g.edges])

    def with_single_color(self, label: str = "_") -> ColoredDigraph:
        return ColoredDigraph.build(self.node_labels, [label],
                                    [(u, v, 0) for u, v in self.edges])


def validate(graph: ColoredDigraph) -> ValidationReport:
    """Collect every structural problem of ``graph`` without raising."""
    issues = []
    n, m = graph.n, graph.m
    if len(set(graph.node_labels)) != n:
        issues.append(Issue("error", "duplicate node label", "nodes"))
    if len(set(graph.color_labels)) != m:
        issues.append(Issue("error", "duplicate color label", "colors"))
    seen = set()
    for i, e in enumerate(graph.edges):
        loc = f"edges[{i}]"
        if len(e) != 3:
            issues.append(Issue("error", f"edge {e!r} is not a (from, to, color) triple", loc))
            continue
        u, v, c = e
        for end in (u, v):
            if not (isinstance(end, int) and 0 <= end < n):
                issues.append(Issue("error", f"dangling endpoint {end!r}", loc))
        if not (isinstance(c, int) and 0 <= c < m):
            issues.append(Issue("error", f"undeclared color {c!r}", loc))
        if e in seen:
            issues.append(Issue("error", f"duplicate edge {e!r}", loc))
        seen.add(e)
    seen_u = set()
    for i, e in enumerate(graph.unobservable):
        loc = f"unobservable[{i}]"
        if len(e) != 2:
            issues.append(Issue("error", f"unobservable edge {e!r} is not a (from, to) pair", loc))
            continue
        for end in e:
            if not (isinstance(end, int) and 0 <= end < n):
                issues.append(Issue("error", f"dangling endpoint {end!r}", loc))
        if e in seen_u:
            issues.append(Issue("error", f"duplicate unobservable edge {e!r}", loc))
        seen_u.add(e)
    if m == 0 and n > 0 and not graph.edges:
        issues.append(Issue("warning", "graph has no colors", "colors"))
    return ValidationReport(tuple(issues))


def _reach_closure(n: int, adjacency: Sequence[Iterable[int]], sources: Iterable[int]) -> set[int]:
    """Nodes reachable from ``sources`` by one or more edges."""
    seen: set[int] = set()
    stack = [v for s in sources for v in adjacency[s]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(adjacency[v])
    return seen


def plain_adjacency(graph: ColoredDigraph) -> list[list[int]]:
    adj: list[set[int]] = [set() for _ in range(graph.n)]
    for u, v, _ in graph.edges:
        adj[u].add(v)
    return [sorted(s) for s in adj]


def strongly_connected_components(graph: ColoredDigraph) -> list[list[int]]:
    """Tarjan's algorithm (iterative); components come out in reverse topological order."""
    adj = plain_adjacency(graph)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(graph.n):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for j in range(i, len(adj[v])):
                w = adj[v][j]
                if w not in index:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def asymptotically_reachable(graph: ColoredDigraph) -> frozenset[int]:
    """Nodes at which paths of every length end.

    Those are the nodes reachable (in zero or more steps) from a node lying on a
    directed cycle; an acyclic graph has none.
    """
    adj = plain_adjacency(graph)
    on_cycle = set()
    for comp in strongly_connected_components(graph):
        if len(comp) > 1 or comp[0] in adj[comp[0]]:
            on_cycle.update(comp)
    return frozenset(on_cycle | _reach_closure(graph.n, adj, on_cycle))


def epsilon_closure(graph: ColoredDigraph) -> ColoredDigraph:
    """Replace unobservable transitions by colored shortcuts.

    For every colored edge ``(h, i, c)`` and every ``j`` reachable from ``i``
    through one or more unobservable transitions, ``(h, j, c)`` is added.
    """
    if not graph.unobservable:
        return graph
    silent: list[list[int]] = [[] for _ in range(graph.n)]
    for u, v in graph.unobservable:
        silent[u].append(v)
    closure = [_reach_closure(graph.n, silent, [i]) for i in range(graph.n)]
    edges = set(graph.edges)
    for h, i, c in graph.edges:
        edges.update((h, j, c) for j in closure[i])
    return ColoredDigraph(graph.node_labels, graph.color_labels, tuple(sorted(edges)))


def relabel_colors(graph: ColoredDigraph, labels: Sequence[str]) -> ColoredDigraph:
    return ColoredDigraph(graph.node_labels, tuple(labels), graph.edges, graph.unobservable)
