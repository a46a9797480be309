"""Sparsest feedback selection for structurally cyclic systems with dedicated I/O.

With ``B = C = I`` every feedback entry ``K[i, j]`` acts like a state edge
``x_j -> x_i`` (through ``x_j -> y_j -> u_i -> x_i``), and structural
cyclicity settles the cycle-cover condition. What remains is to put all
states into one strongly connected component with as few feedback entries
as possible, i.e. a minimum strong-connectivity augmentation of the state
digraph.

Also here: the rewiring step that merges two feedback-carrying components
without changing the number of feedback entries, and the component count
it acts on.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .augment import AugmentationResult, augment_strong_connectivity
from .graph import scc
from .sfm import qualifying_components
from .system import (
    FeedbackPattern,
    StructuredSystem,
    SystemDigraph,
    build_closed_loop_digraph,
    build_state_digraph,
    check_assumption,
)

__all__ = [
    "AssumptionError",
    "SelectionCase",
    "SelectionResult",
    "select_sparsest_feedback",
    "count_state_covering_sccs",
    "state_covering_components",
    "merge_scc_pair",
    "consolidate_feedback",
]


class AssumptionError(ValueError):
    """The system does not have dedicated I/O or is not structurally cyclic."""

    def __init__(self, clauses: list[str]):
        self.clauses = clauses
        super().__init__("selection requires dedicated I/O and structural cyclicity: " + "; ".join(clauses))


class SelectionCase(enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"


@dataclass(frozen=True)
class SelectionResult:
    k: FeedbackPattern
    augmentation: AugmentationResult
    case: SelectionCase

    @property
    def cardinality(self) -> int:
        return self.k.cardinality


def select_sparsest_feedback(sys: StructuredSystem) -> SelectionResult:
    """Minimum-cardinality feedback pattern with no structurally fixed modes.

    Runs in time linear in the size of the state pattern. Raises
    :class:`AssumptionError` unless ``B`` and ``C`` are identity patterns and
    ``A`` admits a perfect matching; outside that class the problem is
    NP-hard and this construction is not optimal.
    """
    verdict = check_assumption(sys)
    if not verdict.holds:
        raise AssumptionError(verdict.failed_clauses())
    aug = augment_strong_connectivity(build_state_digraph(sys.a))
    n = sys.n
    if not aug.added_edges:
        # any single entry closes the loop; (1, 1) by convention
        return SelectionResult(FeedbackPattern.from_positions(n, n, [(0, 0)]), aug, SelectionCase.IRREDUCIBLE)
    # added state edge x_j -> x_i becomes y_j -> u_i, i.e. K[i, j]
    k = FeedbackPattern.from_positions(n, n, [(i, j) for j, i in aug.added_edges])
    return SelectionResult(k, aug, SelectionCase.REDUCIBLE)


def state_covering_components(sd: SystemDigraph) -> list[int]:
    """Component ids (of the closed-loop SCC decomposition) that contain a state, ascending."""
    dec = scc(sd.graph)
    return np.unique(dec.component_of[: sd.n]).tolist()


def count_state_covering_sccs(sd: SystemDigraph) -> int:
    return len(state_covering_components(sd))


def _smallest_feedback_edge(k_rows: np.ndarray, k_cols: np.ndarray, inside: np.ndarray) -> tuple[int, int]:
    # K positions are row-major sorted, so the first hit is lexicographically smallest
    idx = int(np.flatnonzero(inside)[0])
    return int(k_rows[idx]), int(k_cols[idx])


def merge_scc_pair(sd: SystemDigraph, k: FeedbackPattern, scc_i: int, scc_j: int) -> FeedbackPattern:
    """Rewire two feedback entries so components ``scc_i`` and ``scc_j`` fuse.

    ``sd`` must be the closed-loop digraph of ``k``; component ids refer to
    ``scc(sd.graph)``. With ``y_a -> u_b`` the smallest feedback edge inside
    ``scc_i`` and ``y_c -> u_d`` the smallest inside ``scc_j``, the result
    replaces them by ``y_a -> u_d`` and ``y_c -> u_b``. The count of entries
    is preserved. If one of the two new edges is already present (the
    components are linked by it), only the other edge is rerouted so the
    count still does not drop.

    Every vertex of the two components ends up in one component. Components
    that lie on a path between the two merge as well, so pick a pair with no
    state-covering component between them (e.g. the two smallest ids) when
    the state-covering count should drop by exactly one.
    """
    if scc_i == scc_j:
        raise ValueError(f"cannot merge component {scc_i} with itself")
    *_, current = sd.extract_patterns()
    if current.matrix != k.matrix:
        raise ValueError("feedback pattern does not match the closed-loop digraph")
    dec = scc(sd.graph)
    for cid in (scc_i, scc_j):
        if not 0 <= cid < dec.component_count:
            raise IndexError(f"component {cid} outside [0, {dec.component_count})")
        if not np.any(dec.component_of[: sd.n] == cid):
            raise ValueError(f"component {cid} contains no state vertex")

    rows, cols = k.matrix.row_idx, k.matrix.col_idx
    comp = dec.component_of
    u_comp = comp[sd.n + rows]
    y_comp = comp[sd.n + sd.m + cols]
    picks = []
    for cid in (scc_i, scc_j):
        inside = (u_comp == cid) & (y_comp == cid)
        if not inside.any():
            raise ValueError(f"component {cid} contains no feedback edge")
        picks.append(_smallest_feedback_edge(rows, cols, inside))
    (b_in, a_out), (d_in, c_out) = picks  # K[b, a]: y_a -> u_b ; K[d, c]: y_c -> u_d

    entries = set(k.positions())
    cross_ij = (d_in, a_out) in entries  # y_a -> u_d already there
    cross_ji = (b_in, c_out) in entries  # y_c -> u_b already there
    if cross_ji:
        entries.discard((b_in, a_out))
        entries.add((d_in, a_out))
    elif cross_ij:
        entries.discard((d_in, c_out))
        entries.add((b_in, c_out))
    else:
        entries -= {(b_in, a_out), (d_in, c_out)}
        entries |= {(d_in, a_out), (b_in, c_out)}
    return FeedbackPattern.from_positions(sd.m, sd.p, entries)


def consolidate_feedback(sys: StructuredSystem, k: FeedbackPattern) -> FeedbackPattern:
    """Repeatedly merge state-covering components until one is left.

    ``k`` must put every state in a component with a feedback edge. The
    number of entries never changes; each step merges the two
    state-covering components with the smallest ids, so each step removes
    exactly one.
    """
    while True:
        sd = build_closed_loop_digraph(sys, k)
        dec = scc(sd.graph)
        comps = np.unique(dec.component_of[: sd.n]).tolist()
        if len(comps) <= 1:
            return k
        qualifying = qualifying_components(sd, dec)
        if not qualifying[comps].all():
            raise ValueError("every state-covering component needs a feedback edge")
        k = merge_scc_pair(sd, k, comps[0], comps[1])
