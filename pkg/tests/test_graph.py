import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsefb.graph import Digraph, is_strongly_connected, reachable_from, scc, topological_order

from brute import reach_sets


@st.composite
def digraphs(draw, max_nodes=12):
    n = draw(st.integers(0, max_nodes))
    if n == 0:
        return Digraph(0)
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    return Digraph(n, edges)


def test_canonical_form_sorts_and_dedups():
    g = Digraph(3, [(2, 0), (0, 1), (2, 0), (1, 1)])
    assert g.edges == [(0, 1), (1, 1), (2, 0)]
    assert g.successors(2) == [0]
    assert g.has_edge(1, 1) and not g.has_edge(1, 0)


def test_out_of_range_edge_rejected():
    with pytest.raises(IndexError):
        Digraph(2, [(0, 2)])


def test_two_cycle_plus_tail():
    # 1-based {1->2, 2->1, 2->3}
    dec = scc(Digraph(3, [(0, 1), (1, 0), (1, 2)]))
    assert dec.component_count == 2
    assert sorted(map(sorted, dec.members)) == [[0, 1], [2]]
    a, b = dec.component_of[0], dec.component_of[2]
    assert dec.condensation.edges == [(a, b)]


def test_self_loop_chains_are_singletons():
    edges = [(i, i) for i in range(9)] + [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)]
    dec = scc(Digraph(9, edges))
    assert dec.component_count == 9
    assert dec.condensation.edge_count == 6


def test_empty_graph():
    dec = scc(Digraph(0))
    assert dec.component_count == 0
    assert dec.members == []


def test_strong_connectivity_verdicts():
    assert is_strongly_connected(Digraph(1))
    assert not is_strongly_connected(Digraph(2, [(0, 1)]))
    assert is_strongly_connected(Digraph(2, [(0, 1), (1, 0)]))
    with pytest.raises(ValueError, match="empty graph"):
        is_strongly_connected(Digraph(0))


def test_reachable_from_chain():
    g = Digraph(3, [(0, 1), (1, 2)])
    assert reachable_from(g, 0) == {0, 1, 2}
    assert reachable_from(g, 2) == {2}
    with pytest.raises(IndexError):
        reachable_from(g, 3)


def test_reachable_from_merging_chains():
    # x1->x2, x2->x3, x2->x4, x4->x7, x5->x6, x6->x7 (0-based below)
    edges = [(0, 1), (1, 2), (1, 3), (3, 6), (4, 5), (5, 6)] + [(i, i) for i in range(7)]
    assert reachable_from(Digraph(7, edges), 0) == {0, 1, 2, 3, 6}


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_components_match_mutual_reachability(g):
    dec = scc(g)
    reach = reach_sets(g.node_count, g.edges)
    for u in range(g.node_count):
        for v in range(g.node_count):
            mutual = v in reach[u] and u in reach[v]
            assert dec.same_component(u, v) == mutual


@settings(max_examples=200, deadline=None)
@given(digraphs())
def test_condensation_is_acyclic_and_reverse_topological(g):
    dec = scc(g)
    cond = dec.condensation
    assert all(a != b for a, b in cond.edges)
    assert topological_order(cond) is not None
    assert all(a > b for a, b in cond.edges)
    assert sorted(v for ms in dec.members for v in ms) == list(range(g.node_count))


@settings(max_examples=100, deadline=None)
@given(digraphs(max_nodes=10), st.data())
def test_reachable_from_matches_bfs(g, data):
    if g.node_count == 0:
        return
    s = data.draw(st.integers(0, g.node_count - 1))
    assert reachable_from(g, s) == reach_sets(g.node_count, g.edges)[s]


def test_random_graphs_up_to_fifty_nodes():
    rng = random.Random(3)
    for _ in range(60):
        n = rng.randint(1, 50)
        edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 3 * n))]
        dec = scc(Digraph(n, edges))
        reach = reach_sets(n, edges)
        comp = dec.component_of
        for u in range(n):
            same = set(np.flatnonzero(comp == comp[u]).tolist())
            assert same == {v for v in reach[u] if u in reach[v]}


def test_deep_path_does_not_overflow_stack():
    n = 200_000
    g = Digraph(n, np.column_stack((np.arange(n - 1), np.arange(1, n))))
    dec = scc(g)
    assert dec.component_count == n
    assert len(reachable_from(g, 0)) == n
