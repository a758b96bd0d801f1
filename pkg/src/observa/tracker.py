"""Following the set of possible agent positions along an observed color word."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graph import ColoredDigraph


@dataclass(frozen=True)
class TrackState:
    possible: frozenset[int]
    step: int


def to_mask(nodes: Iterable[int]) -> int:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def step_mask(graph: ColoredDigraph, mask: int, color: int) -> int:
    succ = graph.successor_masks[color]
    out = 0
    v = 0
    while mask:
        if mask & 1:
            out |= succ[v]
        mask >>= 1
        v += 1
    return out


def step(graph: ColoredDigraph, state: Iterable[int], color: int) -> frozenset[int]:
    """Nodes reachable from ``state`` by one edge of ``color``."""
    graph.check_word([color])
    return from_mask(step_mask(graph, to_mask(state), color))


def track(graph: ColoredDigraph, word: Sequence[int],
          start: Iterable[int] | None = None) -> list[TrackState]:
    """The possible-position sets after each prefix of ``word``; entry 0 is ``start``.

    ``start`` defaults to every node.
    """
    word = graph.check_word(word)
    mask = (1 << graph.n) - 1 if start is None else to_mask(start)
    states = [TrackState(from_mask(mask), 0)]
    for t, c in enumerate(word, 1):
        mask = step_mask(graph, mask, c)
        states.append(TrackState(from_mask(mask), t))
    return states


def localization_times(graph: ColoredDigraph, word: Sequence[int]) -> list[int]:
    """Steps ``1 <= t <= len(word)`` after which at most one position remains."""
    return [s.step for s in track(graph, word)[1:] if len(s.possible) <= 1]


@dataclass(frozen=True, eq=False)
class CountMatrix:
    entries: np.ndarray  # object dtype, Python ints
    word: tuple[int, ...]

    def __getitem__(self, ij):
        return self.entries[ij]

    def support(self, rows: Iterable[int] | None = None) -> frozenset[int]:
        """Columns with a nonzero entry in ``rows`` (all rows by default)."""
        sub = self.entries if rows is None else self.entries[sorted(rows)]
        return frozenset(int(j) for j in np.flatnonzero((sub != 0).any(axis=0)))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def color_matrix(graph: ColoredDigraph, color: int) -> np.ndarray:
    a = np.zeros((graph.n, graph.n), dtype=object)
    a[...] = 0
    for u, targets in enumerate(graph.successors[color]):
        for v in targets:
            a[u, v] = 1
    return a


def path_count_matrix(graph: ColoredDigraph, word: Sequence[int]) -> CountMatrix:
    """Product of the per-color adjacency matrices along ``word``.

    Entry ``(i, j)`` is the number of paths from ``i`` to ``j`` spelling ``word``;
    exact, since entries are Python integers.
    """
    word = graph.check_word(word)
    n = graph.n
    acc = np.zeros((n, n), dtype=object)
    acc[...] = 0
    for i in range(n):
        acc[i, i] = 1
    mats = {}
    for c in word:
        if c not in mats:
            mats[c] = color_matrix(graph, c)
        acc = acc.dot(mats[c]) if n else acc
    return CountMatrix(acc, word)
