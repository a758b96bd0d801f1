import numpy as np
import pytest
from hypothesis import given, settings

from observa.analysis import find_cycle
from observa.generators import named_example, random_colored_graph
from observa.graph import ColoredDigraph
from observa.pairs import build_pair_graph, longest_path_layers

from conftest import colored_graphs


def brute_edges(g, kind):
    nodes = [(a, b) for a in range(g.n) for b in range(g.n) if kind == "H" or a != b]
    out = set()
    for p in nodes:
        for q in nodes:
            for c in range(g.m):
                succ = g.successors[c]
                if kind == "G2tilde":
                    reach = set(succ[p[0]]) | set(succ[p[1]])
                    ok = q[0] in reach and q[1] in reach
                else:
                    ok = q[0] in succ[p[0]] and q[1] in succ[p[1]]
                if ok:
                    out.add((p, q))
    return out


def edges_of(pg):
    return {(p, q) for p, q, _ in pg.pair_edges()}


def test_twocyc_pair_graph(twocyc):
    pg = build_pair_graph(twocyc, "G2")
    assert pg.pair_nodes == [(0, 1), (1, 0)]
    assert edges_of(pg) == {((0, 1), (1, 0)), ((1, 0), (0, 1))}


def test_shift_weak_pair_graph_has_self_loop(shift):
    assert edges_of(build_pair_graph(shift, "G2")) == {((0, 1), (1, 2)), ((1, 0), (2, 1))}
    tilde = edges_of(build_pair_graph(shift, "G2tilde"))
    assert ((1, 2), (1, 2)) in tilde
    assert find_cycle(build_pair_graph(shift, "G2")) is None


def test_h_includes_diagonal(loop1):
    pg = build_pair_graph(loop1, "H")
    assert edges_of(pg) == {((0, 0), (0, 0))}


def test_rejects_unobservable_edges():
    g = ColoredDigraph.build(2, ["a"], [(0, 1, 0)], [(1, 0)])
    with pytest.raises(ValueError):
        build_pair_graph(g, "G2")


@pytest.mark.parametrize("kind", ["G2", "G2tilde", "H"])
@settings(max_examples=150, deadline=None)
@given(g=colored_graphs(max_n=5))
def test_builders_match_brute_force(kind, g):
    dense = build_pair_graph(g, kind, method="dense")
    sparse = build_pair_graph(g, kind, method="sparse")
    assert np.array_equal(dense.indptr, sparse.indptr)
    assert np.array_equal(dense.indices, sparse.indices)
    assert edges_of(dense) == brute_edges(g, kind)


@settings(max_examples=150, deadline=None)
@given(colored_graphs(max_n=5))
def test_g2_inside_g2tilde_inside_h(g):
    g2 = edges_of(build_pair_graph(g, "G2"))
    assert g2 <= edges_of(build_pair_graph(g, "G2tilde"))
    assert g2 <= edges_of(build_pair_graph(g, "H"))


@settings(max_examples=150, deadline=None)
@given(colored_graphs(max_n=5))
def test_cycle_witness_is_a_real_cycle(g):
    for kind in ("G2", "G2tilde"):
        pg = build_pair_graph(g, kind)
        w = find_cycle(pg)
        layers = longest_path_layers(pg.indptr, pg.indices)
        assert (w is None) == bool((layers >= 0).all())
        if w is None:
            continue
        idx = [pg.index(*p) for p in w.pairs]
        assert len(set(idx)) == len(idx)
        for p, q, cs in zip(idx, idx[1:] + idx[:1], w.colors):
            assert pg.has_edge(p, q) and cs and cs == pg.edge_colors(p, q)


def test_sparse_path_on_larger_graph():
    g = random_colored_graph(70, 3, 0.02, 5)
    auto = build_pair_graph(g, "G2tilde")
    dense = build_pair_graph(g, "G2tilde", method="dense")
    assert np.array_equal(auto.indices, dense.indices)


def test_layers_on_dag_and_cycle():
    indptr = np.array([0, 1, 2, 2])
    indices = np.array([1, 2])
    assert longest_path_layers(indptr, indices).tolist() == [0, 1, 2]
    cyc = longest_path_layers(np.array([0, 1, 2, 3]), np.array([1, 0, 0]))
    # node 2 only feeds the cycle, so it still gets a layer
    assert cyc.tolist() == [-1, -1, 0]
