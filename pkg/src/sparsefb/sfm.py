"""Structurally-fixed-mode test for a closed-loop structured system.

A closed loop ``(A, B, C, K)`` is free of structurally fixed modes exactly
when

(a) every state vertex sits in a strongly connected component of the
    closed-loop digraph that also contains a feedback (output -> input)
    edge, and
(b) the state vertices can be covered by node-disjoint cycles of that
    digraph.

Both checks return witnesses so callers can see *why* a pattern fails.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bipartite import spanning_cycle_family
from .graph import SccDecomposition, scc
from .system import (
    EdgeKind,
    FeedbackPattern,
    StructuredSystem,
    SystemDigraph,
    build_closed_loop_digraph,
)

__all__ = [
    "SccSummary",
    "SfmReport",
    "check_condition_a",
    "check_condition_b",
    "check_no_sfm",
    "feasible_set_nonempty",
    "qualifying_components",
]


@dataclass(frozen=True)
class SccSummary:
    component: int
    states: tuple[int, ...]
    has_feedback_edge: bool


@dataclass(frozen=True)
class SfmReport:
    condition_a: bool
    condition_b: bool
    violating_states_a: tuple[int, ...]
    cycle_cover_witness: tuple[tuple[int, ...], ...] | None
    scc_summary: tuple[SccSummary, ...]

    @property
    def no_sfm(self) -> bool:
        return self.condition_a and self.condition_b


def qualifying_components(sd: SystemDigraph, dec: SccDecomposition | None = None) -> np.ndarray:
    """Boolean mask over component ids: does the component hold a feedback edge?

    One pass over the feedback edges; an edge counts when both of its
    endpoints fall in the same component.
    """
    dec = scc(sd.graph) if dec is None else dec
    ys, us = sd.edges_of_kind(EdgeKind.E_K)
    comp = dec.component_of
    inside = comp[ys] == comp[us]
    mask = np.zeros(dec.component_count, dtype=bool)
    mask[comp[ys[inside]]] = True
    return mask


def _summarize(sd: SystemDigraph, dec: SccDecomposition, mask: np.ndarray) -> tuple[SccSummary, ...]:
    state_comp = dec.component_of[: sd.n]
    order = np.argsort(state_comp, kind="stable")
    comps, starts = np.unique(state_comp[order], return_index=True)
    groups = np.split(order, starts[1:])
    return tuple(
        SccSummary(int(c), tuple(g.tolist()), bool(mask[c])) for c, g in zip(comps.tolist(), groups)
    )


def check_condition_a(sd: SystemDigraph) -> tuple[bool, list[int]]:
    """Every state in a component containing a feedback edge.

    Returns the verdict and the (0-based) states that violate it.
    """
    dec = scc(sd.graph)
    mask = qualifying_components(sd, dec)
    violating = np.flatnonzero(~mask[dec.component_of[: sd.n]])
    return violating.size == 0, violating.tolist()


def check_condition_b(sd: SystemDigraph) -> tuple[bool, list[list[int]] | None]:
    """States coverable by node-disjoint cycles; the cycles are the witness.

    Witness cycles are vertex lists of the closed-loop digraph, each starting
    at its smallest vertex and ordered by that vertex.
    """
    cycles = spanning_cycle_family(sd.graph, sd.state_nodes)
    return cycles is not None, cycles


def check_no_sfm(sys: StructuredSystem, k: FeedbackPattern) -> SfmReport:
    sd = build_closed_loop_digraph(sys, k)
    dec = scc(sd.graph)
    mask = qualifying_components(sd, dec)
    violating = np.flatnonzero(~mask[dec.component_of[: sd.n]])
    ok_b, cycles = check_condition_b(sd)
    return SfmReport(
        condition_a=violating.size == 0,
        condition_b=ok_b,
        violating_states_a=tuple(violating.tolist()),
        cycle_cover_witness=None if cycles is None else tuple(tuple(c) for c in cycles),
        scc_summary=_summarize(sd, dec, mask),
    )


def feasible_set_nonempty(sys: StructuredSystem) -> SfmReport:
    """Check the full feedback pattern; if it has fixed modes, every pattern does."""
    return check_no_sfm(sys, FeedbackPattern.full(sys.m, sys.p))
