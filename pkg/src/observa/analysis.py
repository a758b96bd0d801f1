"""Deciding observability and computing minimal localization times."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .graph import ColoredDigraph, asymptotically_reachable
from .pairs import (PairGraph, build_pair_graph, cycle_core, longest_path_layers,
                    restrict, reachable, reverse, shortest_cycle)


class InternalError(RuntimeError):
    """An invariant that the theory guarantees was found broken: a bug."""


@dataclass(frozen=True)
class CycleWitness:
    """A cycle in a pair graph.

    ``colors[i]`` lists the colors taking ``pairs[i]`` to ``pairs[i + 1]``
    (cyclically).
    """

    kind: str
    pairs: tuple[tuple[int, int], ...]
    colors: tuple[tuple[int, ...], ...]

    def describe(self, graph: ColoredDigraph) -> str:
        nl, cl = graph.node_labels, graph.color_labels
        steps = [f"({nl[a]},{nl[b]}) -{'/'.join(cl[c] for c in cs)}->"
                 for (a, b), cs in zip(self.pairs, self.colors)]
        a, b = self.pairs[0]
        return f"{self.kind} cycle: " + " ".join(steps) + f" ({nl[a]},{nl[b]})"

    def to_json(self, graph: ColoredDigraph) -> dict:
        nl, cl = graph.node_labels, graph.color_labels
        return {"type": "cycle", "kind": self.kind,
                "pairs": [[nl[a], nl[b]] for a, b in self.pairs],
                "colors": [[cl[c] for c in cs] for cs in self.colors]}


@dataclass(frozen=True)
class BranchWitness:
    """An asymptotically reachable node with two out-edges of one color."""

    node: int
    color: int
    targets: tuple[int, int]

    def describe(self, graph: ColoredDigraph) -> str:
        nl = graph.node_labels
        return (f"node {nl[self.node]} has two {graph.color_labels[self.color]}-edges "
                f"(to {nl[self.targets[0]]} and {nl[self.targets[1]]})")

    def to_json(self, graph: ColoredDigraph) -> dict:
        nl = graph.node_labels
        return {"type": "branch", "node": nl[self.node],
                "color": graph.color_labels[self.color],
                "targets": [nl[t] for t in self.targets]}


Witness = Union[CycleWitness, BranchWitness]


@dataclass(frozen=True)
class ObservabilityReport:
    observable: bool
    partly_observable: bool
    partly_aposteriori: bool
    witness: Optional[Witness] = None
    min_time: Optional[int] = None
    min_partial_time: Optional[int] = None


def _require_closed(graph: ColoredDigraph) -> None:
    if graph.unobservable:
        raise ValueError("graph has unobservable edges; apply epsilon_closure first")


def find_cycle(pg: PairGraph) -> Optional[CycleWitness]:
    layer = longest_path_layers(pg.indptr, pg.indices)
    if (layer >= 0).all():
        return None
    core = cycle_core(pg.indptr, pg.indices, layer)
    cyc = shortest_cycle(pg.indptr, pg.indices, core)
    colors = tuple(pg.edge_colors(p, q) for p, q in zip(cyc, cyc[1:] + cyc[:1]))
    return CycleWitness(pg.kind, tuple(pg.pair(p) for p in cyc), colors)


def branching_node(graph: ColoredDigraph) -> Optional[BranchWitness]:
    """The first asymptotically reachable node with two same-colored out-edges."""
    for v in sorted(asymptotically_reachable(graph)):
        for c in range(graph.m):
            targets = graph.successors[c][v]
            if len(targets) >= 2:
                return BranchWitness(v, c, (targets[0], targets[1]))
    return None


def is_observable(graph: ColoredDigraph) -> tuple[bool, Optional[Witness]]:
    """Observable iff no two separated cycles share a color word (the pair
    graph on distinct nodes is acyclic) and no asymptotically reachable node
    branches on a color."""
    _require_closed(graph)
    branch = branching_node(graph)
    if branch is not None:
        return False, branch
    cyc = find_cycle(build_pair_graph(graph, "G2"))
    return cyc is None, cyc


def is_partly_observable(graph: ColoredDigraph) -> tuple[bool, Optional[CycleWitness]]:
    _require_closed(graph)
    cyc = find_cycle(build_pair_graph(graph, "G2tilde"))
    return cyc is None, cyc


def is_partly_aposteriori_observable(graph: ColoredDigraph) -> bool:
    """Acyclicity of the distinct-pair graph alone.

    This is the weaker condition under which some past position can be
    recovered from a long enough observation; that it is also sufficient is
    our reading, not a proven statement.
    """
    _require_closed(graph)
    return find_cycle(build_pair_graph(graph, "G2")) is None


def _diagonal(n: int) -> np.ndarray:
    return np.arange(n, dtype=np.int64) * (n + 1)


def min_observation_time(graph: ColoredDigraph, *, checked: bool = False) -> Optional[int]:
    """Smallest ``T`` such that every word of length ``T`` or more leaves at
    most one possible position; ``None`` when the graph is not observable.

    Works on the full pair graph (diagonal included): a path there ending off
    the diagonal is exactly a word that two paths with distinct ends allow.
    The longest such path has ``T - 1`` edges. ``checked=True`` skips the
    observability test when the caller has already done it.
    """
    _require_closed(graph)
    if not checked and not is_observable(graph)[0]:
        return None
    n = graph.n
    if n <= 1:
        return 0
    pg = build_pair_graph(graph, "H")
    off = np.ones(pg.size, dtype=bool)
    off[_diagonal(n)] = False
    rind, ridx = reverse(pg.indptr, pg.indices)
    relevant = reachable(rind, ridx, np.flatnonzero(off))
    ind, idx = restrict(pg.indptr, pg.indices, relevant)
    layer = longest_path_layers(ind, idx)
    if (layer[relevant] < 0).any():
        raise InternalError("cycle among pairs that can still split, in an observable graph")
    return int(layer[off].max()) + 1


def min_partial_observation_time(graph: ColoredDigraph, *, checked: bool = False) -> Optional[int]:
    """Smallest ``T`` such that every word of length ``T`` or more has a
    prefix of length ``1..T`` leaving at most one possible position."""
    _require_closed(graph)
    n = graph.n
    pg = build_pair_graph(graph, "G2tilde")
    layer = longest_path_layers(pg.indptr, pg.indices)
    if (layer < 0).any():
        return None
    if n <= 1:
        return 0
    return int(layer.max()) + 1


def analyze(graph: ColoredDigraph) -> ObservabilityReport:
    """All verdicts at once; the witness explains why the graph is not observable."""
    _require_closed(graph)
    aposteriori = is_partly_aposteriori_observable(graph)
    partly, _ = is_partly_observable(graph)
    observable, witness = is_observable(graph)
    if observable and not partly:
        raise InternalError("observable graph judged not partly observable")
    return ObservabilityReport(
        observable=observable,
        partly_observable=partly,
        partly_aposteriori=aposteriori,
        witness=witness,
        min_time=min_observation_time(graph, checked=True) if observable else None,
        min_partial_time=min_partial_observation_time(graph) if partly else None,
    )
