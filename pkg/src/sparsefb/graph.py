"""Directed-graph substrate: compressed adjacency, SCCs, condensation, reachability.

Graphs are immutable. Edges are canonicalized on construction (sorted by
``(source, target)``, duplicates removed, self-loops kept) and stored as a
CSR out-adjacency so that the linear-time traversals below can walk
contiguous arrays.
"""
from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Digraph",
    "SccDecomposition",
    "scc",
    "is_strongly_connected",
    "reachable_from",
    "topological_order",
]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class Digraph:
    """Immutable directed graph on nodes ``0 .. node_count - 1``.

    ``edges`` may be any iterable of ``(source, target)`` pairs or an
    ``(E, 2)`` integer array; order and duplicates do not matter.
    """

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] | np.ndarray = ()):
        node_count = int(node_count)
        if node_count < 0:
            raise ValueError("node_count must be non-negative")
        arr = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        if arr.size == 0:
            arr = np.empty((0, 2), dtype=np.int64)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be (source, target) pairs")
        if arr.size and (arr.min() < 0 or arr.max() >= node_count):
            bad = arr[(arr < 0).any(axis=1) | (arr >= node_count).any(axis=1)][0]
            raise IndexError(f"edge {tuple(bad.tolist())} has an endpoint outside [0, {node_count})")
        keys = np.unique(arr[:, 0] * max(node_count, 1) + arr[:, 1])
        n = max(node_count, 1)
        self.node_count = node_count
        self.src = _frozen(keys // n)
        self.dst = _frozen(keys % n)
        self.indptr = _frozen(
            np.concatenate(([0], np.cumsum(np.bincount(self.src, minlength=node_count)))).astype(np.int64)
        )

    @classmethod
    def _from_canonical(cls, node_count: int, src: np.ndarray, dst: np.ndarray) -> Digraph:
        # caller guarantees sorted, unique, in-range arrays
        g = cls.__new__(cls)
        g.node_count = node_count
        g.src = _frozen(np.ascontiguousarray(src, dtype=np.int64))
        g.dst = _frozen(np.ascontiguousarray(dst, dtype=np.int64))
        g.indptr = _frozen(
            np.concatenate(([0], np.cumsum(np.bincount(g.src, minlength=node_count)))).astype(np.int64)
        )
        return g

    @property
    def edge_count(self) -> int:
        return int(self.src.size)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Canonical edge list, sorted by ``(source, target)``."""
        return list(zip(self.src.tolist(), self.dst.tolist()))

    def canonicalize(self) -> Digraph:
        # construction already canonicalizes
        return self

    def successors(self, v: int) -> list[int]:
        return self.dst[self.indptr[v]:self.indptr[v + 1]].tolist()

    def has_edge(self, u: int, v: int) -> bool:
        lo, hi = self.indptr[u], self.indptr[u + 1]
        i = lo + np.searchsorted(self.dst[lo:hi], v)
        return bool(i < hi and self.dst[i] == v)

    def reverse(self) -> Digraph:
        return Digraph(self.node_count, np.column_stack((self.dst, self.src)))

    def add_edges(self, edges: Iterable[tuple[int, int]] | np.ndarray) -> Digraph:
        extra = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        extra = extra.reshape(-1, 2)
        return Digraph(self.node_count, np.vstack((np.column_stack((self.src, self.dst)), extra)))

    @cached_property
    def _adjacency(self) -> tuple[list[int], list[int]]:
        # plain lists are much faster than ndarray indexing inside Python loops
        return self.indptr.tolist(), self.dst.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
        )

    def __hash__(self) -> int:
        return hash((self.node_count, self.src.tobytes(), self.dst.tobytes()))

    def __repr__(self) -> str:
        return f"Digraph(node_count={self.node_count}, edge_count={self.edge_count})"


@dataclass(frozen=True, eq=False)
class SccDecomposition:
    """Strongly connected components of a digraph.

    Component ids follow reverse topological order of the condensation:
    if component ``a`` has an edge to component ``b`` then ``a > b``. Sinks
    therefore get the smallest ids.
    """

    component_of: np.ndarray
    component_count: int
    condensation: Digraph

    @cached_property
    def members(self) -> list[list[int]]:
        """Nodes of each component, ascending."""
        order = np.argsort(self.component_of, kind="stable")
        bounds = np.cumsum(np.bincount(self.component_of, minlength=self.component_count))[:-1]
        return [chunk.tolist() for chunk in np.split(order, bounds)] if self.component_count else []

    @cached_property
    def representatives(self) -> np.ndarray:
        """Smallest node index in each component."""
        rep = np.full(self.component_count, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(rep, self.component_of, np.arange(self.component_of.size))
        return _frozen(rep)

    def same_component(self, u: int, v: int) -> bool:
        return bool(self.component_of[u] == self.component_of[v])


def _tarjan(node_count: int, indptr: list[int], indices: list[int]) -> tuple[list[int], int]:
    index = [-1] * node_count
    low = [0] * node_count
    on_stack = [False] * node_count
    comp = [-1] * node_count
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(node_count):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work_v = [root]
        work_i = [indptr[root]]
        while work_v:
            v = work_v[-1]
            i = work_i[-1]
            end = indptr[v + 1]
            descended = False
            while i < end:
                w = indices[i]
                i += 1
                if index[w] == -1:
                    work_i[-1] = i
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work_v.append(w)
                    work_i.append(indptr[w])
                    descended = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work_v.pop()
            work_i.pop()
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            if work_v:
                u = work_v[-1]
                if low[v] < low[u]:
                    low[u] = low[v]
    return comp, ncomp


def scc(g: Digraph) -> SccDecomposition:
    """Strongly connected components by iterative Tarjan, linear in nodes + edges."""
    indptr, indices = g._adjacency
    comp_list, ncomp = _tarjan(g.node_count, indptr, indices)
    comp = np.asarray(comp_list, dtype=np.int64)
    if g.edge_count:
        cs, cd = comp[g.src], comp[g.dst]
        keep = cs != cd
        keys = np.unique(cs[keep] * ncomp + cd[keep])
        condensation = Digraph._from_canonical(ncomp, keys // ncomp, keys % ncomp)
    else:
        condensation = Digraph._from_canonical(ncomp, np.empty(0, np.int64), np.empty(0, np.int64))
    return SccDecomposition(_frozen(comp), ncomp, condensation)


def is_strongly_connected(g: Digraph) -> bool:
    if g.node_count == 0:
        raise ValueError("empty graph has no connectivity verdict")
    if g.node_count == 1:
        return True
    # forward and backward reachability from node 0 is cheaper than a full SCC pass
    return len(reachable_from(g, 0)) == g.node_count and len(reachable_from(g.reverse(), 0)) == g.node_count


def reachable_from(g: Digraph, start: int) -> set[int]:
    """All nodes reachable from ``start``, including ``start`` itself."""
    if not 0 <= start < g.node_count:
        raise IndexError(f"start node {start} outside [0, {g.node_count})")
    indptr, indices = g._adjacency
    seen = [False] * g.node_count
    seen[start] = True
    out = [start]
    todo = [start]
    while todo:
        v = todo.pop()
        for w in indices[indptr[v]:indptr[v + 1]]:
            if not seen[w]:
                seen[w] = True
                out.append(w)
                todo.append(w)
    return set(out)


def topological_order(g: Digraph) -> list[int] | None:
    """Kahn's algorithm; ``None`` when ``g`` has a cycle (self-loops count)."""
    indptr, indices = g._adjacency
    indeg = np.bincount(g.dst, minlength=g.node_count).tolist()
    ready = [v for v in range(g.node_count) if indeg[v] == 0]
    order = []
    while ready:
        v = ready.pop()
        order.append(v)
        for w in indices[indptr[v]:indptr[v + 1]]:
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return order if len(order) == g.node_count else None
