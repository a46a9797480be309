"""Exhaustive certifier for feedback selection, plus a random instance generator.

The search does not share any logic with the augmentation route: it tries
every feedback pattern, smallest cardinality first, and asks the fixed-mode
checker about each one. It is a test fixture, so it refuses inputs whose
search space would not finish in minutes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .graph import Digraph
from .bipartite import has_spanning_cycle_family
from .sfm import check_no_sfm
from .system import FeedbackPattern, StructuredMatrix, StructuredSystem, _system_edges

__all__ = [
    "SEARCH_BUDGET",
    "SearchSpaceError",
    "OracleResult",
    "brute_force_min_feedback",
    "search_size",
    "generate_random_system",
]

# same worst case as a full enumeration of a 20-entry pattern
SEARCH_BUDGET = 2**20


class SearchSpaceError(ValueError):
    """The requested enumeration exceeds :data:`SEARCH_BUDGET`."""


@dataclass(frozen=True)
class OracleResult:
    min_cardinality: int | None
    all_optima: tuple[FeedbackPattern, ...] = field(default=())
    explored: int = 0

    @property
    def found(self) -> bool:
        return self.min_cardinality is not None


def search_size(entries: int, max_card: int) -> int:
    """Number of patterns with at most ``max_card`` of ``entries`` positions set."""
    return sum(comb(entries, r) for r in range(max_card + 1))


def _largest_admissible(entries: int) -> int:
    r = 0
    while r < entries and search_size(entries, r + 1) <= SEARCH_BUDGET:
        r += 1
    return r


def brute_force_min_feedback(sys: StructuredSystem, max_card: int | None = None) -> OracleResult:
    """Every minimum-cardinality feedback pattern free of structurally fixed modes.

    Patterns are enumerated by cardinality and, within one cardinality, in
    lexicographic order of their sorted position lists. The first
    cardinality with a feasible pattern is searched to the end and all of its
    feasible patterns are returned. ``min_cardinality`` is ``None`` when no
    pattern with at most ``max_card`` entries works.

    ``max_card`` defaults to ``m * p``. Raises :class:`SearchSpaceError` when
    the number of candidates up to ``max_card`` exceeds the budget.
    """
    m, p, n = sys.m, sys.p, sys.n
    entries = m * p
    if max_card is None:
        max_card = entries
    if not 0 <= max_card <= entries:
        raise ValueError(f"max_card must lie in [0, {entries}], got {max_card}")
    size = search_size(entries, max_card)
    if size > SEARCH_BUDGET:
        raise SearchSpaceError(
            f"{size} candidate patterns up to cardinality {max_card} exceed the budget of "
            f"{SEARCH_BUDGET}; the largest admissible max_card for {m}x{p} feedback is "
            f"{_largest_admissible(entries)}"
        )

    positions = [(i, j) for i in range(m) for j in range(p)]
    node_count = n + m + p
    base = Digraph(node_count, np.vstack(_system_edges(sys)))
    closure = _closure(base)
    # feedback entry (i, j) is the edge y_j -> u_i
    k_src = [n + m + j for _, j in positions]
    k_dst = [n + i for i, _ in positions]

    explored = 0
    for r in range(max_card + 1):
        optima = []
        for combo in combinations(range(entries), r):
            explored += 1
            ys = [k_src[c] for c in combo]
            us = [k_dst[c] for c in combo]
            if not _every_state_on_feedback_cycle(closure, n, ys, us):
                continue
            g = base.add_edges(list(zip(ys, us)))
            if has_spanning_cycle_family(g, range(n)):
                optima.append(FeedbackPattern.from_positions(m, p, [positions[c] for c in combo]))
        if optima:
            # re-certify with the reporting checker
            if not all(check_no_sfm(sys, k).no_sfm for k in optima):
                raise RuntimeError("fast feasibility test disagrees with check_no_sfm")
            return OracleResult(r, tuple(optima), explored)
    return OracleResult(None, (), explored)


def _closure(g: Digraph) -> list[int]:
    """Reachable set of every vertex as an int bitmask (vertex itself included)."""
    indptr, adj = g._adjacency
    out = []
    for v in range(g.node_count):
        seen = 1 << v
        todo = [v]
        while todo:
            x = todo.pop()
            for y in adj[indptr[x]:indptr[x + 1]]:
                if not (seen >> y) & 1:
                    seen |= 1 << y
                    todo.append(y)
        out.append(seen)
    return out


def _every_state_on_feedback_cycle(closure: list[int], n: int, ys: list[int], us: list[int]) -> bool:
    # a state x shares a component with feedback edge y -> u iff x reaches y and u reaches x
    r = len(ys)
    if n and not r:
        return False
    # reach[e]: everything reachable from u_e once the feedback edges are in place
    reach = [closure[u] for u in us]
    changed = True
    while changed:
        changed = False
        for e in range(r):
            cur = reach[e]
            new = cur
            for f in range(r):
                if (cur >> ys[f]) & 1:
                    new |= reach[f]
            if new != cur:
                reach[e] = new
                changed = True
    for x in range(n):
        rx = closure[x]
        for f in range(r):
            if (closure[x] >> ys[f]) & 1:
                rx |= reach[f]
        if not any((rx >> ys[e]) & 1 and (reach[e] >> x) & 1 for e in range(r)):
            return False
    return True


def generate_random_system(n: int, edge_probability: float, seed: int) -> StructuredSystem:
    """Random dedicated-I/O system whose state pattern has every self-loop.

    Each off-diagonal entry of ``A`` is nonzero independently with
    ``edge_probability``. Same arguments, same system.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0.0 <= edge_probability <= 1.0:
        raise ValueError(f"edge_probability must lie in [0, 1], got {edge_probability}")
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < edge_probability
    np.fill_diagonal(mask, True)
    rows, cols = np.nonzero(mask)
    return StructuredSystem.dedicated(StructuredMatrix(n, n, np.column_stack((rows, cols))))
