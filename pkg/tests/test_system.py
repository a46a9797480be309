import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsefb.graph import scc
from sparsefb.system import (
    DimensionError,
    EdgeKind,
    FeedbackPattern,
    StructuredMatrix,
    StructuredSystem,
    VertexKind,
    build_closed_loop_digraph,
    build_open_loop_digraph,
    build_state_digraph,
    check_assumption,
)

from conftest import dedicated, feedback


def test_state_digraph_is_transposed():
    # A[2, 1] (1-based) nonzero means x1 influences x2
    g = build_state_digraph(StructuredMatrix(2, 2, [(1, 0)]))
    assert g.edges == [(0, 1)]


def test_state_digraph_identity_and_empty():
    assert build_state_digraph(StructuredMatrix.identity(3)).edges == [(0, 0), (1, 1), (2, 2)]
    assert build_state_digraph(StructuredMatrix.zeros(2, 2)).edge_count == 0
    with pytest.raises(DimensionError):
        build_state_digraph(StructuredMatrix(2, 3))


def test_pattern_basics():
    a = StructuredMatrix(2, 3, [(1, 2), (0, 0), (1, 2)])
    assert a.nnz == 2
    assert a.positions() == [(0, 0), (1, 2)]
    assert (1, 2) in a and (0, 1) not in a
    assert a.to_dense().sum() == 2
    assert StructuredMatrix.identity(3).is_identity()
    assert not StructuredMatrix(3, 3, [(0, 0), (1, 1), (2, 1)]).is_identity()
    # a permutation is not the identity pattern
    assert not StructuredMatrix(2, 2, [(0, 1), (1, 0)]).is_identity()
    with pytest.raises(IndexError):
        StructuredMatrix(2, 2, [(2, 0)])


def test_system_dimension_checks():
    with pytest.raises(DimensionError):
        StructuredSystem(StructuredMatrix(2, 2), StructuredMatrix(3, 1), StructuredMatrix(1, 2))
    with pytest.raises(DimensionError):
        StructuredSystem(StructuredMatrix(2, 2), StructuredMatrix(2, 1), StructuredMatrix(1, 3))
    sys_ = StructuredSystem(StructuredMatrix(2, 2), StructuredMatrix(2, 1), StructuredMatrix(3, 2))
    with pytest.raises(DimensionError):
        build_closed_loop_digraph(sys_, FeedbackPattern.zeros(3, 1))


def test_closed_loop_three_chains_has_three_feedback_components(three_chains):
    sd = build_closed_loop_digraph(three_chains, feedback(9, [(1, 3), (4, 6), (7, 9)]))
    dec = scc(sd.graph)
    ys, us = sd.edges_of_kind(EdgeKind.E_K)
    carrying = {int(dec.component_of[y]) for y, u in zip(ys, us) if dec.same_component(y, u)}
    assert len(carrying) == 3
    for comp in carrying:
        assert sum(1 for y in ys if dec.component_of[y] == comp) == 1


def test_zero_feedback_has_no_feedback_edges(three_chains):
    sd = build_open_loop_digraph(three_chains)
    assert sd.edges_of_kind(EdgeKind.E_K)[0].size == 0


def test_scalar_full_system_is_one_cycle():
    one = StructuredMatrix.full(1, 1)
    sd = build_closed_loop_digraph(StructuredSystem(one, one, one), FeedbackPattern.full(1, 1))
    assert sd.graph.node_count == 3
    assert [sd.label(v) for v in range(3)] == ["x1", "u1", "y1"]
    # u1 -> x1 -> y1 -> u1 plus the self-loop on x1
    assert sd.graph.edges == [(0, 0), (0, 2), (1, 0), (2, 1)]
    assert scc(sd.graph).component_count == 1


def test_vertex_and_edge_kinds():
    sys_ = StructuredSystem(StructuredMatrix.identity(2), StructuredMatrix(2, 1, [(0, 0)]), StructuredMatrix(3, 2, [(2, 1)]))
    sd = build_closed_loop_digraph(sys_, FeedbackPattern.from_positions(1, 3, [(0, 2)]))
    kinds = [sd.vertex_kind(v) for v in range(6)]
    assert kinds == [VertexKind.STATE] * 2 + [VertexKind.INPUT] + [VertexKind.OUTPUT] * 3
    assert sd.edge_kind(2, 0) is EdgeKind.E_U
    assert sd.edge_kind(1, 5) is EdgeKind.E_Y
    assert sd.edge_kind(5, 2) is EdgeKind.E_K
    assert sd.edge_kind(0, 0) is EdgeKind.E_X
    with pytest.raises(ValueError):
        sd.edge_kind(2, 3)


@st.composite
def systems_with_feedback(draw):
    n = draw(st.integers(1, 5))
    m = draw(st.integers(1, 4))
    p = draw(st.integers(1, 4))

    def pattern(r, c):
        return StructuredMatrix(r, c, draw(st.sets(st.tuples(st.integers(0, r - 1), st.integers(0, c - 1)))))

    return StructuredSystem(pattern(n, n), pattern(n, m), pattern(p, n)), FeedbackPattern(pattern(m, p))


@settings(max_examples=200, deadline=None)
@given(systems_with_feedback())
def test_round_trip_and_counts(case):
    sys_, k = case
    sd = build_closed_loop_digraph(sys_, k)
    a, b, c, k2 = sd.extract_patterns()
    assert (a, b, c, k2.matrix) == (sys_.a, sys_.b, sys_.c, k.matrix)
    assert sd.graph.edge_count == sys_.a.nnz + sys_.b.nnz + sys_.c.nnz + k.cardinality
    kinds = [sd.vertex_kind(v) for v in range(sd.graph.node_count)]
    assert kinds.count(VertexKind.STATE) == sys_.n
    assert kinds.count(VertexKind.INPUT) == sys_.m
    assert kinds.count(VertexKind.OUTPUT) == sys_.p
    expected = {
        EdgeKind.E_X: (VertexKind.STATE, VertexKind.STATE),
        EdgeKind.E_U: (VertexKind.INPUT, VertexKind.STATE),
        EdgeKind.E_Y: (VertexKind.STATE, VertexKind.OUTPUT),
        EdgeKind.E_K: (VertexKind.OUTPUT, VertexKind.INPUT),
    }
    for u, v in sd.graph.edges:
        assert (kinds[u], kinds[v]) == expected[sd.edge_kind(u, v)]


def test_assumption_on_merging_chains(merging_chains):
    v = check_assumption(merging_chains)
    assert (v.b_identity, v.c_identity, v.structurally_cyclic) == (True, True, True)
    assert v.holds


def test_assumption_with_zero_row():
    a = StructuredMatrix(3, 3, [(0, 0), (0, 1), (1, 1), (1, 2)])
    v = check_assumption(StructuredSystem.dedicated(a))
    assert (v.b_identity, v.c_identity, v.structurally_cyclic) == (True, True, False)
    assert "perfect matching" in v.explanation


def test_assumption_with_fewer_inputs():
    sys_ = StructuredSystem(StructuredMatrix.identity(3), StructuredMatrix(3, 2, [(0, 0), (1, 1)]), StructuredMatrix.identity(3))
    v = check_assumption(sys_)
    assert not v.b_identity and v.c_identity and v.structurally_cyclic
    assert not v.holds


def test_permuted_dedicated_outputs_are_rejected():
    sys_ = StructuredSystem(StructuredMatrix.identity(2), StructuredMatrix.identity(2), StructuredMatrix(2, 2, [(0, 1), (1, 0)]))
    assert not check_assumption(sys_).c_identity


def test_large_pattern_construction_is_cheap():
    n = 200_000
    d = np.arange(n)
    a = StructuredMatrix(n, n, np.column_stack((np.r_[d, d[1:]], np.r_[d, d[:-1]])))
    sd = build_open_loop_digraph(StructuredSystem.dedicated(a))
    assert sd.graph.edge_count == a.nnz + 2 * n


def test_random_systems_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 6)
        sys_ = dedicated(n, [(rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, 8))])
        a, b, c, k = build_open_loop_digraph(sys_).extract_patterns()
        assert a == sys_.a and b.is_identity() and c.is_identity() and k.cardinality == 0
