"""Exact backtracking search for colorings that make a digraph (partly) observable.

Both design problems are NP-complete, so this is only meant for small inputs
(a couple of dozen nodes or edges). The search

* orders targets by descending degree, ties by index;
* breaks color-permutation symmetry: a target may only take a color already
  used or the next unused one, so solutions come out in canonical form;
* tries colors in ascending order, so the first solution found is the
  lexicographically smallest canonical one;
* checks every complete assignment with the polynomial checkers of
  :mod:`observa.analysis`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Hashable, Optional, Sequence

from .analysis import is_observable, is_partly_observable
from .graph import ColoredDigraph, Digraph, asymptotically_reachable
from .pairs import build_pair_graph, longest_path_layers

NODES, EDGES = "nodes", "edges"
FEASIBLE, INFEASIBLE, BUDGET = "feasible", "infeasible", "budget_exceeded"


@dataclass(frozen=True)
class DesignBudget:
    max_nodes: int = 2_000_000
    max_seconds: float = 300.0


@dataclass(frozen=True)
class ColoringAssignment:
    target: str
    assignment: dict  # node -> color, or (u, v) -> color
    k: int

    def apply(self, g: Digraph) -> ColoredDigraph:
        labels = [str(i) for i in range(max(self.k, 1))]
        if self.target == NODES:
            edges = [(u, v, self.assignment[v]) for u, v in g.edges]
        else:
            edges = [(u, v, self.assignment[(u, v)]) for u, v in g.edges]
        return ColoredDigraph.build(g.node_labels, labels, edges)

    def to_json(self, g: Digraph) -> dict:
        nl = g.node_labels
        if self.target == NODES:
            amap = {nl[v]: c for v, c in sorted(self.assignment.items())}
        else:
            amap = {f"{nl[u]}->{nl[v]}": c for (u, v), c in sorted(self.assignment.items())}
        return {"target": self.target, "k": self.k, "assignment": amap}


@dataclass(frozen=True)
class DesignResult:
    status: str
    assignment: Optional[ColoringAssignment] = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    k: Optional[int] = None  # colors allowed (design_*) or minimum found (minimum_colors)
    largest_infeasible: Optional[int] = None

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE

    def to_json(self, g: Digraph) -> dict:
        out = {"status": self.status, "k": self.k,
               "nodes_explored": self.nodes_explored, "elapsed": round(self.elapsed, 6)}
        if self.assignment is not None:
            out["assignment"] = self.assignment.to_json(g)["assignment"]
            out["colors_used"] = self.assignment.k
        if self.largest_infeasible is not None:
            out["largest_infeasible"] = self.largest_infeasible
        return out


class _OutOfBudget(Exception):
    pass


def _has_cycle(graph: ColoredDigraph, kind: str) -> bool:
    pg = build_pair_graph(graph, kind)
    return bool((longest_path_layers(pg.indptr, pg.indices) < 0).any())


class _Search:
    def __init__(self, targets: Sequence[Hashable], k: int, budget: DesignBudget,
                 conflicts: dict, accept: Callable[[dict], bool],
                 partial_ok: Callable[[dict], bool] | None = None):
        self.targets = list(targets)
        self.k = k
        self.budget = budget
        self.conflicts = conflicts
        self.accept = accept
        self.partial_ok = partial_ok
        self.explored = 0
        self.deadline = time.monotonic() + budget.max_seconds

    def run(self) -> Optional[dict]:
        return self._extend({}, 0, -1)

    def _extend(self, assign: dict, i: int, top: int) -> Optional[dict]:
        self.explored += 1
        if self.explored > self.budget.max_nodes or time.monotonic() > self.deadline:
            raise _OutOfBudget
        if i == len(self.targets):
            return dict(assign) if self.accept(assign) else None
        t = self.targets[i]
        for c in range(min(top + 2, self.k)):
            if any(assign.get(o) == c for o in self.conflicts.get(t, ())):
                continue
            assign[t] = c
            if self.partial_ok is None or self.partial_ok(assign):
                found = self._extend(assign, i + 1, max(top, c))
                if found is not None:
                    return found
            del assign[t]
        return None


def _result(status, found, target, search, started, k) -> DesignResult:
    assignment = None
    if found is not None:
        assignment = ColoringAssignment(target, found, max(found.values(), default=-1) + 1)
    return DesignResult(status, assignment, search.explored, time.monotonic() - started, k)


def _degrees(g: Digraph) -> list[int]:
    deg = [0] * g.n
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def _colored(g: Digraph, k: int, edges) -> ColoredDigraph:
    return ColoredDigraph(g.node_labels, tuple(str(i) for i in range(max(k, 1))),
                          tuple(sorted(edges)))


def design_node_coloring_observable(g: Digraph, k: int,
                                    budget: DesignBudget = DesignBudget()) -> DesignResult:
    """Color the nodes of ``g`` with at most ``k`` colors so that it becomes
    observable; each edge takes the color of its head."""
    if k < 1:
        raise ValueError("k must be at least 1")
    started = time.monotonic()
    deg = _degrees(g)
    targets = sorted(range(g.n), key=lambda v: (-deg[v], v))
    # out-neighbours of an asymptotically reachable node need distinct colors
    conflicts: dict[int, set[int]] = {}
    ar = asymptotically_reachable(g.with_single_color())
    succ: dict[int, list[int]] = {}
    for u, v in g.edges:
        succ.setdefault(u, []).append(v)
    for u in ar:
        outs = succ.get(u, [])
        for a in outs:
            for b in outs:
                if a != b:
                    conflicts.setdefault(a, set()).add(b)

    def accept(assign):
        return is_observable(_colored(g, k, [(u, v, assign[v]) for u, v in g.edges]))[0]

    search = _Search(targets, k, budget, conflicts, accept)
    try:
        found = search.run()
    except _OutOfBudget:
        return _result(BUDGET, None, NODES, search, started, k)
    if found is not None:
        assert accept(found), "solver returned an assignment its checker rejects"
    return _result(FEASIBLE if found is not None else INFEASIBLE, found, NODES, search, started, k)


def _edge_design(g: Digraph, k: int, budget: DesignBudget, observable: bool) -> DesignResult:
    if k < 1:
        raise ValueError("k must be at least 1")
    started = time.monotonic()
    deg = _degrees(g)
    targets = sorted(g.edges, key=lambda e: (-(deg[e[0]] + deg[e[1]]), e))
    conflicts: dict = {}
    if observable:
        ar = asymptotically_reachable(g.with_single_color())
        for u in ar:
            outs = [e for e in g.edges if e[0] == u]
            for a in outs:
                conflicts[a] = {b for b in outs if b != a}
    kind = "G2" if observable else "G2tilde"

    def colored(assign):
        return _colored(g, k, [(u, v, c) for (u, v), c in assign.items()])

    def partial_ok(assign):
        # pair-graph edges only accumulate as edges get colored, so a cycle is final
        return not _has_cycle(colored(assign), kind)

    def accept(assign):
        check = is_observable if observable else is_partly_observable
        return check(colored(assign))[0]

    search = _Search(targets, k, budget, conflicts, accept, partial_ok)
    try:
        found = search.run()
    except _OutOfBudget:
        return _result(BUDGET, None, EDGES, search, started, k)
    if found is not None:
        assert accept(found), "solver returned an assignment its checker rejects"
    return _result(FEASIBLE if found is not None else INFEASIBLE, found, EDGES, search, started, k)


def design_edge_coloring_partly_observable(g: Digraph, k: int,
                                           budget: DesignBudget = DesignBudget()) -> DesignResult:
    """Color the edges of ``g`` with at most ``k`` colors so that it becomes partly observable."""
    return _edge_design(g, k, budget, observable=False)


def design_edge_coloring_observable(g: Digraph, k: int,
                                    budget: DesignBudget = DesignBudget()) -> DesignResult:
    """Experimental: edge colors for full observability. No hardness result or
    reduction backs this combination; it is the same search with the
    observability checker."""
    return _edge_design(g, k, budget, observable=True)


SOLVERS = {
    NODES: design_node_coloring_observable,
    EDGES: design_edge_coloring_partly_observable,
    "edges-observable": design_edge_coloring_observable,
}


def minimum_colors(g: Digraph, target: str = NODES,
                   budget: DesignBudget = DesignBudget()) -> DesignResult:
    """Fewest colors for which the ``target`` design problem is feasible.

    Tries ``k = 1, 2, ...`` up to the number of targets; ``budget`` covers the
    whole sweep. On budget exhaustion the result carries the largest ``k``
    proven infeasible.
    """
    solve = SOLVERS[target]
    started = time.monotonic()
    limit = max(1, g.n if target == NODES else len(g.edges))
    explored = 0
    largest_infeasible = None
    for k in range(1, limit + 1):
        remaining = DesignBudget(budget.max_nodes - explored,
                                 budget.max_seconds - (time.monotonic() - started))
        if remaining.max_nodes <= 0 or remaining.max_seconds <= 0:
            res = DesignResult(BUDGET)
        else:
            res = solve(g, k, remaining)
        explored += res.nodes_explored
        elapsed = time.monotonic() - started
        if res.status == FEASIBLE:
            return DesignResult(FEASIBLE, res.assignment, explored, elapsed, k, largest_infeasible)
        if res.status == BUDGET:
            return DesignResult(BUDGET, None, explored, elapsed, None, largest_infeasible)
        largest_infeasible = k
    raise AssertionError("distinct colors for every target always succeed")  # pragma: no cover
