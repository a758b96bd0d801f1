import itertools

import pytest
from hypothesis import given, settings, strategies as st

from observa.analysis import is_observable, is_partly_observable
from observa.design import (BUDGET, EDGES, FEASIBLE, INFEASIBLE, NODES, ColoringAssignment,
                            DesignBudget, design_edge_coloring_observable,
                            design_edge_coloring_partly_observable,
                            design_node_coloring_observable, minimum_colors)
from observa.generators import complete_graph, named_example, reduce_3colorability
from observa.graph import Digraph


def topology(name):
    return Digraph.of(named_example(name))


def exhaustive_feasible(g, k, target):
    if target == NODES:
        return any(is_observable(ColoringAssignment(NODES, dict(enumerate(cols)), k).apply(g))[0]
                   for cols in itertools.product(range(k), repeat=g.n))
    return any(is_partly_observable(ColoringAssignment(EDGES, dict(zip(g.edges, cols)), k)
                                    .apply(g))[0]
               for cols in itertools.product(range(k), repeat=len(g.edges)))


@st.composite
def small_digraphs(draw, max_n=4, max_edges=6):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_edges))
    return Digraph.build(n, edges)


@pytest.mark.parametrize("name, target, k", [
    ("twocyc", NODES, 2), ("twocyc", EDGES, 2),
    ("star2", EDGES, 2), ("star2", NODES, 3),
    ("loop1", NODES, 1), ("loop1", EDGES, 1),
])
def test_minimum_colors_examples(name, target, k):
    g = topology(name)
    res = minimum_colors(g, target)
    assert res.status == FEASIBLE and res.k == k
    assert res.largest_infeasible == (k - 1 if k > 1 else None)
    colored = res.assignment.apply(g)
    check = is_observable if target == NODES else is_partly_observable
    assert check(colored)[0]


def test_canonical_first_solution():
    res = design_node_coloring_observable(topology("twocyc"), 2)
    assert res.assignment.assignment == {0: 0, 1: 1}
    assert res.to_json(topology("twocyc"))["assignment"] == {"0": 0, "1": 1}


def test_3col_reduction_needs_three_colors():
    g = reduce_3colorability(complete_graph(3)).output
    assert design_node_coloring_observable(g, 2).status == INFEASIBLE
    res = design_node_coloring_observable(g, 3)
    assert res.feasible and is_observable(res.assignment.apply(g))[0]


def test_budget_exhaustion_is_reported():
    g = reduce_3colorability(complete_graph(3)).output
    res = design_node_coloring_observable(g, 3, DesignBudget(max_nodes=5))
    assert res.status == BUDGET and res.assignment is None
    res = minimum_colors(g, NODES, DesignBudget(max_nodes=60))
    assert res.status == BUDGET


def test_k_must_be_positive():
    with pytest.raises(ValueError):
        design_node_coloring_observable(topology("twocyc"), 0)


def test_experimental_edge_observable_mode():
    g = topology("star2")
    # two colors always leave a pair cycle such as (c,l1) -> (l2,c) -> (c,l1)
    assert not design_edge_coloring_observable(g, 2).feasible
    res = design_edge_coloring_observable(g, 3)
    assert res.feasible and is_observable(res.assignment.apply(g))[0]


@settings(max_examples=60, deadline=None)
@given(small_digraphs(max_n=3, max_edges=5), st.integers(1, 2))
def test_experimental_mode_matches_enumeration(g, k):
    expected = any(is_observable(ColoringAssignment(EDGES, dict(zip(g.edges, cols)), k).apply(g))[0]
                   for cols in itertools.product(range(k), repeat=len(g.edges)))
    assert design_edge_coloring_observable(g, k).feasible == expected


@settings(max_examples=120, deadline=None)
@given(small_digraphs(), st.integers(1, 3))
def test_solver_matches_enumeration(g, k):
    for target, solve in ((NODES, design_node_coloring_observable),
                          (EDGES, design_edge_coloring_partly_observable)):
        res = solve(g, k)
        assert res.feasible == exhaustive_feasible(g, k, target)
        if res.feasible:
            assert res.assignment.k <= k
            assert set(res.assignment.assignment.values()) <= set(range(k))


@settings(max_examples=60, deadline=None)
@given(small_digraphs(max_n=4, max_edges=5))
def test_feasibility_is_monotone_in_k(g):
    for solve in (design_node_coloring_observable, design_edge_coloring_partly_observable):
        verdicts = [solve(g, k).feasible for k in (1, 2, 3)]
        assert verdicts == sorted(verdicts)
