import random

import pytest

from sparsefb.graph import scc
from sparsefb.oracle import generate_random_system
from sparsefb.select import (
    AssumptionError,
    SelectionCase,
    consolidate_feedback,
    count_state_covering_sccs,
    merge_scc_pair,
    select_sparsest_feedback,
    state_covering_components,
)
from sparsefb.sfm import check_no_sfm
from sparsefb.system import (
    StructuredMatrix,
    StructuredSystem,
    build_closed_loop_digraph,
    build_open_loop_digraph,
)

from cases import random_feasible_pair
from conftest import dedicated, feedback


def _pairs(k):
    return sorted((i + 1, j + 1) for i, j in k.positions())


def test_three_chains(three_chains):
    res = select_sparsest_feedback(three_chains)
    assert res.cardinality == 3 and res.case is SelectionCase.REDUCIBLE
    assert check_no_sfm(three_chains, res.k).no_sfm
    assert count_state_covering_sccs(build_closed_loop_digraph(three_chains, res.k)) == 1


def test_merging_chains(merging_chains):
    assert _pairs(select_sparsest_feedback(merging_chains).k) == [(1, 7), (5, 3)]


def test_irreducible_uses_one_entry():
    sys_ = dedicated(3, [(1, 2), (2, 3), (3, 1)])
    res = select_sparsest_feedback(sys_)
    assert res.case is SelectionCase.IRREDUCIBLE
    assert _pairs(res.k) == [(1, 1)]
    assert res.augmentation.added_edges == ()


def test_identity_state_pattern_needs_n_entries():
    res = select_sparsest_feedback(dedicated(4, []))
    assert res.cardinality == 4
    assert check_no_sfm(dedicated(4, []), res.k).no_sfm


def test_assumption_violations_are_named():
    with pytest.raises(AssumptionError) as err:
        select_sparsest_feedback(dedicated(2, [(1, 2)], loops=False))
    assert "structurally cyclic" in str(err.value)
    sys_ = StructuredSystem(StructuredMatrix.identity(2), StructuredMatrix(2, 1, [(0, 0), (1, 0)]), StructuredMatrix.identity(2))
    with pytest.raises(AssumptionError) as err:
        select_sparsest_feedback(sys_)
    assert err.value.clauses == ["input pattern is not the n x n identity"]


def test_selected_pattern_is_feasible_on_random_systems():
    for seed in range(60):
        sys_ = generate_random_system(1 + seed % 8, [0.05, 0.15, 0.3][seed % 3], seed)
        res = select_sparsest_feedback(sys_)
        assert check_no_sfm(sys_, res.k).no_sfm


def test_covering_counts(three_chains):
    beta3 = build_closed_loop_digraph(three_chains, feedback(9, [(1, 3), (4, 6), (7, 9)]))
    beta2 = build_closed_loop_digraph(three_chains, feedback(9, [(1, 6), (4, 3), (7, 9)]))
    beta1 = build_closed_loop_digraph(three_chains, feedback(9, [(1, 9), (4, 3), (7, 6)]))
    assert [count_state_covering_sccs(sd) for sd in (beta3, beta2, beta1)] == [3, 2, 1]
    assert count_state_covering_sccs(build_open_loop_digraph(three_chains)) == 9


def test_merge_example(three_chains):
    k = feedback(9, [(1, 3), (4, 6), (7, 9)])
    sd = build_closed_loop_digraph(three_chains, k)
    dec = scc(sd.graph)
    first = int(dec.component_of[0])  # x1's component
    second = int(dec.component_of[3])  # x4's component
    merged = merge_scc_pair(sd, k, first, second)
    assert _pairs(merged) == [(1, 6), (4, 3), (7, 9)]


def test_merge_errors(three_chains):
    k = feedback(9, [(1, 3), (4, 6), (7, 9)])
    sd = build_closed_loop_digraph(three_chains, k)
    comps = state_covering_components(sd)
    with pytest.raises(ValueError):
        merge_scc_pair(sd, k, comps[0], comps[0])
    with pytest.raises(ValueError):
        merge_scc_pair(sd, feedback(9, [(1, 3)]), comps[0], comps[1])
    # an input vertex on its own has no state
    lonely = int(scc(sd.graph).component_of[sd.input(1)])
    with pytest.raises(ValueError):
        merge_scc_pair(sd, k, comps[0], lonely)


def test_merge_with_existing_cross_edge():
    # two self-looped states, K = {(1,1), (2,2), (2,1)}: y1 -> u2 already links them
    sys_ = dedicated(2, [])
    k = feedback(2, [(1, 1), (2, 2), (2, 1)])
    sd = build_closed_loop_digraph(sys_, k)
    comps = state_covering_components(sd)
    assert len(comps) == 2
    merged = merge_scc_pair(sd, k, comps[0], comps[1])
    assert merged.cardinality == 3
    assert count_state_covering_sccs(build_closed_loop_digraph(sys_, merged)) == 1


def test_consolidate_three_chains(three_chains):
    k = consolidate_feedback(three_chains, feedback(9, [(1, 3), (4, 6), (7, 9)]))
    assert k.cardinality == 3
    assert count_state_covering_sccs(build_closed_loop_digraph(three_chains, k)) == 1


def test_merge_property_random():
    rng = random.Random(21)
    for _ in range(150):
        sys_, k = random_feasible_pair(rng)
        sd = build_closed_loop_digraph(sys_, k)
        beta = count_state_covering_sccs(sd)
        comps = state_covering_components(sd)
        merged = merge_scc_pair(sd, k, comps[0], comps[1])
        assert merged.cardinality == k.cardinality
        assert count_state_covering_sccs(build_closed_loop_digraph(sys_, merged)) == beta - 1
        assert check_no_sfm(sys_, merged).no_sfm
        final = consolidate_feedback(sys_, k)
        assert final.cardinality == k.cardinality
        assert count_state_covering_sccs(build_closed_loop_digraph(sys_, final)) == 1
