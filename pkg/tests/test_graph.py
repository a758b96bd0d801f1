from hypothesis import given, settings

from observa.graph import (ColoredDigraph, Digraph, GraphError, asymptotically_reachable,
                           epsilon_closure, strongly_connected_components, validate)
from observa.generators import named_example, star

from conftest import all_colored_graphs, colored_graphs

import pytest


def ends_of_paths_of_length(g, length):
    """Brute force: nodes where some path with exactly ``length`` edges ends."""
    cur = set(range(g.n))
    for _ in range(length):
        cur = {v for u, v, _ in g.edges if u in cur}
    return frozenset(cur)


def test_validate_empty_graph():
    assert validate(ColoredDigraph((), (), ())).ok


def test_validate_dangling_endpoint():
    g = ColoredDigraph(("0", "1"), ("a",), ((0, 5, 0),))
    report = validate(g)
    assert not report.ok
    assert any("dangling endpoint" in i.message for i in report.issues)


def test_validate_reports_everything_without_raising():
    g = ColoredDigraph(("0", "1"), ("a",), ((0, 1, 0), (0, 1, 0), (0, 1, 3), (7, 0, 0)),
                       ((0, 9),))
    messages = " | ".join(i.message for i in validate(g).issues)
    assert "duplicate edge" in messages
    assert "undeclared color" in messages
    assert messages.count("dangling endpoint") == 2
    assert len(g.edges) == 4  # untouched


def test_validate_loop1(loop1):
    assert validate(loop1).ok


def test_build_rejects_duplicates():
    with pytest.raises(GraphError, match="duplicate"):
        ColoredDigraph.build(2, ["a"], [(0, 1, 0), (0, 1, 0)])


def test_parallel_edges_with_distinct_colors_allowed():
    g = ColoredDigraph.build(2, ["a", "b"], [(0, 1, 0), (0, 1, 1)])
    assert g.successors[0][0] == (1,) and g.successors[1][0] == (1,)


def test_asymptotically_reachable_examples(twocyc, amb):
    assert asymptotically_reachable(twocyc) == {0, 1}
    assert asymptotically_reachable(amb) == frozenset()
    s = star(2)
    assert asymptotically_reachable(s) == {0, 1, 2}
    assert ends_of_paths_of_length(s, 2 * s.n) == {0, 1, 2}


def test_sink_fed_by_cycle_qualifies():
    g = ColoredDigraph.build(3, ["a"], [(0, 0, 0), (0, 1, 0)])
    assert asymptotically_reachable(g) == {0, 1}


def test_asymptotically_reachable_exhaustive_small():
    for n in range(4):
        for g in all_colored_graphs(n, 1):
            assert asymptotically_reachable(g) == ends_of_paths_of_length(g, n * n), g.edges


@settings(max_examples=300, deadline=None)
@given(colored_graphs(max_n=5))
def test_asymptotically_reachable_matches_long_paths(g):
    assert asymptotically_reachable(g) == ends_of_paths_of_length(g, g.n * g.n)


@settings(max_examples=100, deadline=None)
@given(colored_graphs(max_n=6))
def test_scc_partition(g):
    comps = strongly_connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(g.n))


def test_closure_identity_without_unobservable(chain):
    assert epsilon_closure(chain) == chain


def test_closure_single_hop():
    # h -c-> i, then i ~> j unobservably
    g = ColoredDigraph.build(["h", "i", "j"], ["c"], [(0, 1, 0)], [(1, 2)])
    closed = epsilon_closure(g)
    assert closed.edge_set == {(0, 1, 0), (0, 2, 0)}
    assert not closed.unobservable


def test_closure_chain_of_unobservable_moves():
    g = ColoredDigraph.build(["h", "i", "j", "k"], ["c"], [(0, 1, 0)], [(1, 2), (2, 3)])
    assert epsilon_closure(g).edge_set == {(0, 1, 0), (0, 2, 0), (0, 3, 0)}


def test_closure_tolerates_unobservable_cycles():
    g = ColoredDigraph.build(3, ["c"], [(0, 1, 0)], [(1, 2), (2, 1)])
    assert epsilon_closure(g).edge_set == {(0, 1, 0), (0, 2, 0)}


@settings(max_examples=200, deadline=None)
@given(colored_graphs(max_n=5), colored_graphs(max_n=5))
def test_closure_idempotent_and_monotone(g, other):
    silent = sorted({(u % max(g.n, 1), v % max(g.n, 1)) for u, v, _ in other.edges}) if g.n else []
    h = ColoredDigraph.build(g.node_labels, g.color_labels, g.edges, silent)
    once = epsilon_closure(h)
    assert epsilon_closure(once) == once
    assert h.edge_set <= once.edge_set
    assert once.node_labels == h.node_labels


def test_digraph_helpers():
    d = Digraph.of(named_example("star2"))
    assert d.edges == ((0, 1), (0, 2), (1, 0), (2, 0))
    assert d.with_single_color().m == 1
