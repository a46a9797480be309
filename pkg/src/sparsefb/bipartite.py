"""Maximum bipartite matching and the disjoint-cycle-cover test built on it."""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .graph import Digraph

__all__ = [
    "BipartiteGraph",
    "Matching",
    "max_matching",
    "has_perfect_matching",
    "spanning_cycle_family",
    "has_spanning_cycle_family",
]


class BipartiteGraph:
    """Bipartite graph with ``left_count`` left and ``right_count`` right nodes.

    Edges are ``(left, right)`` pairs, canonicalized (sorted, deduplicated).
    """

    def __init__(
        self,
        left_count: int,
        right_count: int,
        edges: Iterable[tuple[int, int]] | np.ndarray = (),
    ):
        if left_count < 0 or right_count < 0:
            raise ValueError("side sizes must be non-negative")
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (
            arr[:, 0].min() < 0 or arr[:, 0].max() >= left_count
            or arr[:, 1].min() < 0 or arr[:, 1].max() >= right_count
        ):
            raise IndexError("bipartite edge endpoint out of range")
        width = max(right_count, 1)
        keys = np.unique(arr[:, 0] * width + arr[:, 1])
        self.left_count = int(left_count)
        self.right_count = int(right_count)
        self.left = keys // width
        self.right = keys % width
        self.indptr = np.concatenate(([0], np.cumsum(np.bincount(self.left, minlength=left_count))))
        for a in (self.left, self.right, self.indptr):
            a.setflags(write=False)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.left.tolist(), self.right.tolist()))

    @classmethod
    def from_pattern(cls, rows: int, cols: int, row_idx: np.ndarray, col_idx: np.ndarray) -> BipartiteGraph:
        """Row/column bipartite graph of a sparsity pattern: edge ``(i, j)`` per nonzero."""
        return cls(rows, cols, np.column_stack((row_idx, col_idx)))

    def __repr__(self) -> str:
        return f"BipartiteGraph({self.left_count}x{self.right_count}, edges={self.left.size})"


@dataclass(frozen=True, eq=False)
class Matching:
    """A matching stored as ``left_to_right[i] = j`` (``-1`` when ``i`` is free)."""

    left_to_right: np.ndarray
    size: int

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        idx = np.flatnonzero(self.left_to_right >= 0)
        return list(zip(idx.tolist(), self.left_to_right[idx].tolist()))


def _hopcroft_karp(left_count: int, right_count: int, indptr: list[int], adj: list[int]) -> list[int]:
    match_l = [-1] * left_count
    match_r = [-1] * right_count

    # greedy warm start, lowest right index first
    for u in range(left_count):
        for v in adj[indptr[u]:indptr[u + 1]]:
            if match_r[v] == -1:
                match_l[u] = v
                match_r[v] = u
                break

    inf = left_count + 1
    while True:
        dist = [inf] * left_count
        queue = [u for u in range(left_count) if match_l[u] == -1]
        if not queue:
            break
        for u in queue:
            dist[u] = 0
        limit = inf
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u]
            if du >= limit:
                continue
            for v in adj[indptr[u]:indptr[u + 1]]:
                w = match_r[v]
                if w == -1:
                    if limit == inf:
                        limit = du + 1
                elif dist[w] == inf:
                    dist[w] = du + 1
                    queue.append(w)
        if limit == inf:
            break

        ptr = indptr[:left_count]
        for root in range(left_count):
            if match_l[root] != -1 or dist[root] != 0:
                continue
            stack = [root]
            via: list[int] = []
            while stack:
                u = stack[-1]
                end = indptr[u + 1]
                pushed = False
                while ptr[u] < end:
                    v = adj[ptr[u]]
                    ptr[u] += 1
                    w = match_r[v]
                    if w == -1:
                        if dist[u] + 1 != limit:
                            continue
                        via.append(v)
                        for lu, rv in zip(stack, via):
                            match_l[lu] = rv
                            match_r[rv] = lu
                        stack = []
                        pushed = True
                        break
                    if dist[w] == dist[u] + 1:
                        via.append(v)
                        stack.append(w)
                        pushed = True
                        break
                if not pushed:
                    dist[u] = inf
                    stack.pop()
                    if via:
                        via.pop()
    return match_l


def max_matching(b: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching (Hopcroft-Karp, O(E sqrt V)).

    Deterministic: the greedy start and every augmenting search scan left
    nodes and their neighbours in ascending index order.
    """
    match_l = _hopcroft_karp(b.left_count, b.right_count, b.indptr.tolist(), b.right.tolist())
    arr = np.asarray(match_l, dtype=np.int64)
    arr.setflags(write=False)
    return Matching(arr, int(np.count_nonzero(arr >= 0)))


def has_perfect_matching(b: BipartiteGraph) -> bool:
    if b.left_count != b.right_count:
        raise ValueError(
            f"perfect matching undefined for unequal sides ({b.left_count} vs {b.right_count})"
        )
    return max_matching(b).size == b.left_count


def _cover_graph(g: Digraph, must_cover: Iterable[int]) -> BipartiteGraph:
    n = g.node_count
    exempt = np.ones(n, dtype=bool)
    cover = np.fromiter(must_cover, dtype=np.int64)
    if cover.size and (cover.min() < 0 or cover.max() >= n):
        bad = cover[(cover < 0) | (cover >= n)][0]
        raise IndexError(f"node {int(bad)} in must_cover outside [0, {n})")
    exempt[cover] = False
    loops = np.flatnonzero(exempt)
    left = np.concatenate((g.src, loops))
    right = np.concatenate((g.dst, loops))
    return BipartiteGraph(n, n, np.column_stack((left, right)))


def spanning_cycle_family(g: Digraph, must_cover: Iterable[int]) -> list[list[int]] | None:
    """Node-disjoint cycles of ``g`` covering every node in ``must_cover``.

    Reduction: a perfect matching between an "out" copy and an "in" copy of
    the nodes, where exempt nodes may match themselves for free, is a
    permutation whose non-trivial orbits are cycles of ``g``. Returns the
    cycles (each rotated to start at its smallest node, listed by that node),
    or ``None`` when no such family exists.
    """
    cover = set(must_cover)
    b = _cover_graph(g, cover)
    m = max_matching(b)
    if m.size != g.node_count:
        return None
    succ = m.left_to_right.tolist()
    seen = [False] * g.node_count
    cycles = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        if succ[start] == start and start not in cover:
            seen[start] = True
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = succ[v]
        cycles.append(cycle)
    return cycles


def has_spanning_cycle_family(g: Digraph, must_cover: Iterable[int]) -> bool:
    """Whether node-disjoint cycles of ``g`` can cover ``must_cover``."""
    return max_matching(_cover_graph(g, must_cover)).size == g.node_count
