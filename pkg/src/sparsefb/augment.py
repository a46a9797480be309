"""Minimum strong-connectivity augmentation (Eswaran-Tarjan construction).

For a digraph whose condensation has ``s`` source-only, ``t`` sink-only and
``q`` isolated components, ``max(s + q, t + q)`` new edges are necessary and
sufficient unless the graph is already strongly connected. The construction:

1. Pair sources with sinks they reach via one marking DFS sweep, so that
   every source reaches a paired sink and every sink is reached from a
   paired source.
2. Chain the pairs into a cycle ``w_1 -> v_2 ~> w_2 -> ... -> w_p``, hook
   each leftover sink to a leftover source, route the surplus sinks and the
   isolated components through the closing edge back to ``v_1``.

Everything runs on the condensation in linear time; component-level edges
are lifted to the smallest-index vertex of each component.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Digraph, SccDecomposition, scc

__all__ = ["AugmentationResult", "augment_strong_connectivity", "census", "augmentation_plan"]


@dataclass(frozen=True)
class AugmentationResult:
    added_edges: tuple[tuple[int, int], ...]
    source_components: int
    sink_components: int
    isolated_components: int


def census(dec: SccDecomposition) -> tuple[list[int], list[int], list[int]]:
    """Source-only, sink-only and isolated components of the condensation (ascending ids)."""
    cond = dec.condensation
    k = dec.component_count
    indeg = np.bincount(cond.dst, minlength=k)
    outdeg = np.bincount(cond.src, minlength=k)
    src = (indeg == 0) & (outdeg > 0)
    snk = (outdeg == 0) & (indeg > 0)
    iso = (indeg == 0) & (outdeg == 0)
    return np.flatnonzero(src).tolist(), np.flatnonzero(snk).tolist(), np.flatnonzero(iso).tolist()


def _pair_sources_to_sinks(
    indptr: list[int], adj: list[int], sources: list[int], is_sink: list[bool]
) -> list[tuple[int, int]]:
    # marks persist across searches, so every vertex is expanded at most once
    marked = [False] * (len(indptr) - 1)
    pairs = []
    for v in sources:
        if marked[v]:
            continue
        marked[v] = True
        stack = [v]
        ptr = [indptr[v]]
        found = -1
        while stack and found < 0:
            x = stack[-1]
            i = ptr[-1]
            if i == indptr[x + 1]:
                stack.pop()
                ptr.pop()
                continue
            ptr[-1] = i + 1
            y = adj[i]
            if marked[y]:
                continue
            marked[y] = True
            if is_sink[y]:
                found = y
            else:
                stack.append(y)
                ptr.append(indptr[y])
        if found >= 0:
            pairs.append((v, found))
    return pairs


def _plan(cond: Digraph, sources: list[int], sinks: list[int], isolated: list[int]) -> list[tuple[int, int]]:
    # requires len(sources) <= len(sinks)
    if not sources:
        # only isolated components remain: one cycle through all of them
        if len(isolated) < 2:
            return []
        return [(isolated[i], isolated[(i + 1) % len(isolated)]) for i in range(len(isolated))]
    is_sink = [False] * cond.node_count
    for w in sinks:
        is_sink[w] = True
    indptr, adj = cond._adjacency
    pairs = _pair_sources_to_sinks(indptr, adj, sources, is_sink)
    p = len(pairs)
    paired_v = {v for v, _ in pairs}
    paired_w = {w for _, w in pairs}
    v = [a for a, _ in pairs] + [a for a in sources if a not in paired_v]
    w = [b for _, b in pairs] + [b for b in sinks if b not in paired_w]
    s = len(v)
    edges = [(w[i], v[i + 1]) for i in range(p - 1)]
    edges += [(w[i], v[i]) for i in range(p, s)]
    tail = [w[p - 1]] + w[s:] + isolated + [v[0]]
    edges += list(zip(tail[:-1], tail[1:]))
    return edges


def augmentation_plan(dec: SccDecomposition) -> list[tuple[int, int]]:
    """Component-level edges that make the condensation strongly connected."""
    if dec.component_count <= 1:
        return []
    sources, sinks, isolated = census(dec)
    cond = dec.condensation
    if len(sources) <= len(sinks):
        return _plan(cond, sources, sinks, isolated)
    # more sources than sinks: solve the reversed problem and flip the edges back
    flipped = _plan(cond.reverse(), sinks, sources, isolated)
    return [(b, a) for a, b in flipped]


def augment_strong_connectivity(g: Digraph) -> AugmentationResult:
    """Fewest edges whose addition makes ``g`` strongly connected."""
    if g.node_count == 0:
        raise ValueError("cannot augment an empty graph")
    dec = scc(g)
    sources, sinks, isolated = census(dec)
    rep = dec.representatives.tolist()
    added = tuple((rep[a], rep[b]) for a, b in augmentation_plan(dec))
    return AugmentationResult(added, len(sources), len(sinks), len(isolated))
