"""Brute-force answers by enumerating color words, for checking the fast algorithms.

Nothing here touches the pair graphs or the tracker: positions are propagated
with plain Python sets built straight from the edge list. Every search runs
under an explicit :class:`OracleBudget` and raises :class:`BudgetExceeded`
instead of returning a truncated answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .graph import ColoredDigraph


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleBudget:
    max_word_length: int = 64
    max_word_count: int = 2_000_000

    def __post_init__(self):
        if self.max_word_length <= 0 or self.max_word_count <= 0:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = OracleBudget()


class _Stepper:
    def __init__(self, graph: ColoredDigraph):
        if graph.unobservable:
            raise ValueError("graph has unobservable edges; apply epsilon_closure first")
        self.m = graph.m
        self.out: dict[tuple[int, int], set[int]] = {}
        for u, v, c in graph.edges:
            self.out.setdefault((u, c), set()).add(v)
        self.cache: dict[tuple[frozenset, int], frozenset] = {}

    def __call__(self, current: frozenset, c: int) -> frozenset:
        key = (current, c)
        hit = self.cache.get(key)
        if hit is None:
            nxt: set[int] = set()
            for u in current:
                nxt |= self.out.get((u, c), set())
            hit = self.cache[key] = frozenset(nxt)
        return hit


def _layers(graph: ColoredDigraph, bound: int, budget: OracleBudget, keep=lambda s: True):
    """Position sets reachable by words of each length ``0..bound``.

    Words are grouped by the set they lead to (the set determines every
    continuation), and each layer maps a set to one word reaching it.
    Sets rejected by ``keep`` are not extended.
    """
    if bound > budget.max_word_length:
        raise BudgetExceeded(f"word length {bound} exceeds budget {budget.max_word_length}")
    step = _Stepper(graph)
    start = frozenset(range(graph.n))
    layer = {start: ()} if keep(start) else {}
    layers = [layer]
    work = 0
    for _ in range(bound):
        nxt: dict[frozenset, tuple[int, ...]] = {}
        for current, word in layer.items():
            for c in range(graph.m):
                work += 1
                if work > budget.max_word_count:
                    raise BudgetExceeded(f"more than {budget.max_word_count} word extensions")
                s = step(current, c)
                if s not in nxt and keep(s):
                    nxt[s] = word + (c,)
        layer = nxt
        layers.append(layer)
        if not layer:
            break
    return layers


def observability_bound(graph: ColoredDigraph) -> int:
    return graph.n * graph.n - graph.n


def oracle_is_observable(graph: ColoredDigraph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """True iff no word of length ``n^2 - n`` leaves two or more possible positions.

    A bad word's suffixes are bad too, so a clean length means every longer
    length is clean; ``n^2 - n`` is where observable graphs are known to have
    settled.
    """
    if graph.n <= 1:
        return True
    bound = observability_bound(graph)
    layers = _layers(graph, bound, budget, keep=bool)
    return not (len(layers) == bound + 1 and any(len(s) >= 2 for s in layers[-1]))


def oracle_is_partly_observable(graph: ColoredDigraph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """True iff no word of length ``n^2`` is ambiguous after every one of its prefixes."""
    if graph.n <= 1:
        return True
    bound = graph.n * graph.n
    layers = _layers(graph, bound, budget, keep=lambda s: len(s) >= 2)
    return not (len(layers) == bound + 1 and layers[-1])


def oracle_longest_bad_word(graph: ColoredDigraph, bound: int,
                            budget: OracleBudget = DEFAULT_BUDGET) -> Optional[tuple[int, tuple[int, ...]]]:
    """Longest ``k <= bound`` with a word of length ``k`` leaving >= 2 positions,
    plus such a word; ``None`` if there is none."""
    layers = _layers(graph, bound, budget, keep=bool)
    best = None
    for k, layer in enumerate(layers):
        for s, word in layer.items():
            if len(s) >= 2:
                best = (k, word)
                break
    return best


def oracle_longest_ambiguous_word(graph: ColoredDigraph, bound: int,
                                  budget: OracleBudget = DEFAULT_BUDGET) -> Optional[tuple[int, tuple[int, ...]]]:
    """Longest ``k <= bound`` with a word of length ``k`` all of whose prefixes
    (lengths ``1..k``) leave >= 2 positions; ``None`` if ``n < 2``."""
    if graph.n < 2:
        return None
    layers = _layers(graph, bound, budget, keep=lambda s: len(s) >= 2)
    k = max(i for i, layer in enumerate(layers) if layer)
    return k, next(iter(layers[k].values()))


def delta(graph: ColoredDigraph, word, start=None) -> frozenset:
    step = _Stepper(graph)
    cur = frozenset(range(graph.n)) if start is None else frozenset(start)
    for c in word:
        cur = step(cur, c)
    return cur


def unpruned_is_observable(graph: ColoredDigraph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    """Same verdict as :func:`oracle_is_observable`, by listing every word."""
    if graph.n <= 1:
        return True
    L = observability_bound(graph)
    if graph.m ** L > budget.max_word_count:
        raise BudgetExceeded(f"{graph.m}^{L} words exceed budget")
    return all(len(delta(graph, w)) <= 1 for w in itertools.product(range(graph.m), repeat=L))


def unpruned_is_partly_observable(graph: ColoredDigraph, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    if graph.n <= 1:
        return True
    L = graph.n * graph.n
    if graph.m ** L > budget.max_word_count:
        raise BudgetExceeded(f"{graph.m}^{L} words exceed budget")
    step = _Stepper(graph)
    for w in itertools.product(range(graph.m), repeat=L):
        cur = frozenset(range(graph.n))
        for c in w:
            cur = step(cur, c)
            if len(cur) <= 1:
                break
        else:
            return False
    return True
