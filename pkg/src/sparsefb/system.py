"""Structured systems (sparsity patterns of A, B, C and a feedback pattern K)
and the digraphs built from them.

Indices are 0-based throughout the library; instance files use 1-based
indices and are converted at the I/O boundary (see :mod:`sparsefb.instance`).
"""
from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .bipartite import BipartiteGraph, has_perfect_matching
from .graph import Digraph

__all__ = [
    "DimensionError",
    "StructuredMatrix",
    "StructuredSystem",
    "FeedbackPattern",
    "VertexKind",
    "EdgeKind",
    "SystemDigraph",
    "AssumptionVerdict",
    "build_state_digraph",
    "build_closed_loop_digraph",
    "build_open_loop_digraph",
    "check_assumption",
    "is_structurally_cyclic",
]


class DimensionError(ValueError):
    """Pattern dimensions are incompatible with each other."""


class StructuredMatrix:
    """A ``rows x cols`` zero/nonzero pattern.

    Nonzero positions are kept as two sorted, deduplicated index arrays
    (row-major order), which keeps million-entry patterns cheap.
    """

    def __init__(self, rows: int, cols: int, nonzeros: Iterable[tuple[int, int]] | np.ndarray = ()):
        if rows < 0 or cols < 0:
            raise DimensionError(f"negative dimensions {rows}x{cols}")
        arr = np.asarray(nonzeros if isinstance(nonzeros, np.ndarray) else list(nonzeros), dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size:
            r, c = arr[:, 0], arr[:, 1]
            bad = (r < 0) | (r >= rows) | (c < 0) | (c >= cols)
            if bad.any():
                pos = tuple(arr[bad][0].tolist())
                raise IndexError(f"position {pos} outside a {rows}x{cols} pattern")
        width = max(cols, 1)
        keys = np.unique(arr[:, 0] * width + arr[:, 1])
        self.rows = int(rows)
        self.cols = int(cols)
        self.row_idx = keys // width
        self.col_idx = keys % width
        self.row_idx.setflags(write=False)
        self.col_idx.setflags(write=False)

    @classmethod
    def identity(cls, n: int) -> StructuredMatrix:
        d = np.arange(n, dtype=np.int64)
        return cls(n, n, np.column_stack((d, d)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> StructuredMatrix:
        return cls(rows, cols)

    @classmethod
    def full(cls, rows: int, cols: int) -> StructuredMatrix:
        r, c = np.divmod(np.arange(rows * cols, dtype=np.int64), max(cols, 1))
        return cls(rows, cols, np.column_stack((r, c)))

    @property
    def nnz(self) -> int:
        return int(self.row_idx.size)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @cached_property
    def nonzeros(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.positions())

    def positions(self) -> list[tuple[int, int]]:
        """Nonzero positions in row-major order."""
        return list(zip(self.row_idx.tolist(), self.col_idx.tolist()))

    def is_identity(self) -> bool:
        return (
            self.rows == self.cols
            and self.nnz == self.rows
            and bool(np.all(self.row_idx == self.col_idx))
        )

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=bool)
        out[self.row_idx, self.col_idx] = True
        return out

    def __contains__(self, pos: tuple[int, int]) -> bool:
        return tuple(pos) in self.nonzeros

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructuredMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.row_idx, other.row_idx)
            and np.array_equal(self.col_idx, other.col_idx)
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.row_idx.tobytes(), self.col_idx.tobytes()))

    def __repr__(self) -> str:
        if self.nnz <= 8:
            return f"StructuredMatrix({self.rows}x{self.cols}, {self.positions()})"
        return f"StructuredMatrix({self.rows}x{self.cols}, nnz={self.nnz})"


@dataclass(frozen=True)
class StructuredSystem:
    """Patterns ``a`` (n x n), ``b`` (n x m) and ``c`` (p x n)."""

    a: StructuredMatrix
    b: StructuredMatrix
    c: StructuredMatrix

    def __post_init__(self):
        n = self.a.rows
        if self.a.cols != n:
            raise DimensionError(f"state pattern must be square, got {self.a.rows}x{self.a.cols}")
        if self.b.rows != n:
            raise DimensionError(f"input pattern has {self.b.rows} rows, expected {n}")
        if self.c.cols != n:
            raise DimensionError(f"output pattern has {self.c.cols} columns, expected {n}")

    @classmethod
    def dedicated(cls, a: StructuredMatrix) -> StructuredSystem:
        """System with one dedicated input and one dedicated output per state."""
        return cls(a, StructuredMatrix.identity(a.rows), StructuredMatrix.identity(a.rows))

    @property
    def n(self) -> int:
        return self.a.rows

    @property
    def m(self) -> int:
        return self.b.cols

    @property
    def p(self) -> int:
        return self.c.rows


@dataclass(frozen=True)
class FeedbackPattern:
    """Feedback pattern ``K`` (m x p): entry ``(i, j)`` feeds output ``j`` to input ``i``."""

    matrix: StructuredMatrix

    @classmethod
    def from_positions(cls, m: int, p: int, positions: Iterable[tuple[int, int]]) -> FeedbackPattern:
        return cls(StructuredMatrix(m, p, positions))

    @classmethod
    def zeros(cls, m: int, p: int) -> FeedbackPattern:
        return cls(StructuredMatrix.zeros(m, p))

    @classmethod
    def full(cls, m: int, p: int) -> FeedbackPattern:
        return cls(StructuredMatrix.full(m, p))

    @property
    def cardinality(self) -> int:
        return self.matrix.nnz

    def positions(self) -> list[tuple[int, int]]:
        return self.matrix.positions()

    def __repr__(self) -> str:
        return f"FeedbackPattern({self.matrix.rows}x{self.matrix.cols}, {self.positions()})"


class VertexKind(enum.Enum):
    STATE = "state"
    INPUT = "input"
    OUTPUT = "output"


class EdgeKind(enum.Enum):
    E_X = "state"
    E_U = "input"
    E_Y = "output"
    E_K = "feedback"


@dataclass(frozen=True, eq=False)
class SystemDigraph:
    """Typed digraph over states ``0..n``, inputs ``n..n+m``, outputs ``n+m..n+m+p``.

    Edge kinds are fully determined by endpoint kinds, so they are not
    stored per edge: state->state is ``E_X``, input->state ``E_U``,
    state->output ``E_Y`` and output->input ``E_K``.
    """

    graph: Digraph
    n: int
    m: int
    p: int

    def state(self, i: int) -> int:
        return i

    def input(self, j: int) -> int:
        return self.n + j

    def output(self, k: int) -> int:
        return self.n + self.m + k

    def vertex_kind(self, v: int) -> VertexKind:
        if not 0 <= v < self.graph.node_count:
            raise IndexError(v)
        if v < self.n:
            return VertexKind.STATE
        if v < self.n + self.m:
            return VertexKind.INPUT
        return VertexKind.OUTPUT

    def local_index(self, v: int) -> int:
        """Index of ``v`` within its own vertex class."""
        if v < self.n:
            return v
        if v < self.n + self.m:
            return v - self.n
        return v - self.n - self.m

    def label(self, v: int) -> str:
        prefix = {VertexKind.STATE: "x", VertexKind.INPUT: "u", VertexKind.OUTPUT: "y"}
        return f"{prefix[self.vertex_kind(v)]}{self.local_index(v) + 1}"

    def edge_kind(self, u: int, v: int) -> EdgeKind:
        ku, kv = self.vertex_kind(u), self.vertex_kind(v)
        kinds = {
            (VertexKind.STATE, VertexKind.STATE): EdgeKind.E_X,
            (VertexKind.INPUT, VertexKind.STATE): EdgeKind.E_U,
            (VertexKind.STATE, VertexKind.OUTPUT): EdgeKind.E_Y,
            (VertexKind.OUTPUT, VertexKind.INPUT): EdgeKind.E_K,
        }
        try:
            return kinds[ku, kv]
        except KeyError:
            raise ValueError(f"no edge kind for {ku.value} -> {kv.value}") from None

    def edges_of_kind(self, kind: EdgeKind) -> tuple[np.ndarray, np.ndarray]:
        """Source and target arrays of all edges of one kind."""
        s, d = self.graph.src, self.graph.dst
        n, nm = self.n, self.n + self.m
        if kind is EdgeKind.E_X:
            mask = (s < n) & (d < n)
        elif kind is EdgeKind.E_U:
            mask = (s >= n) & (s < nm)
        elif kind is EdgeKind.E_Y:
            mask = d >= nm
        else:
            mask = s >= nm
        return s[mask], d[mask]

    def extract_patterns(self) -> tuple[StructuredMatrix, StructuredMatrix, StructuredMatrix, FeedbackPattern]:
        """Recover ``(A, B, C, K)`` from the edge sets."""
        n, m, p = self.n, self.m, self.p
        s, d = self.edges_of_kind(EdgeKind.E_X)
        a = StructuredMatrix(n, n, np.column_stack((d, s)))
        s, d = self.edges_of_kind(EdgeKind.E_U)
        b = StructuredMatrix(n, m, np.column_stack((d, s - n)))
        s, d = self.edges_of_kind(EdgeKind.E_Y)
        c = StructuredMatrix(p, n, np.column_stack((d - n - m, s)))
        s, d = self.edges_of_kind(EdgeKind.E_K)
        k = FeedbackPattern(StructuredMatrix(m, p, np.column_stack((d - n, s - n - m))))
        return a, b, c, k

    @property
    def state_nodes(self) -> range:
        return range(self.n)


def build_state_digraph(a: StructuredMatrix) -> Digraph:
    """State digraph: edge ``x_j -> x_i`` for every nonzero ``A[i, j]``."""
    if a.rows != a.cols:
        raise DimensionError(f"state pattern must be square, got {a.rows}x{a.cols}")
    return Digraph(a.rows, np.column_stack((a.col_idx, a.row_idx)))


def _system_edges(sys: StructuredSystem) -> list[np.ndarray]:
    n, m = sys.n, sys.m
    return [
        np.column_stack((sys.a.col_idx, sys.a.row_idx)),
        np.column_stack((n + sys.b.col_idx, sys.b.row_idx)),
        np.column_stack((sys.c.col_idx, n + m + sys.c.row_idx)),
    ]


def _feedback_edges(sys: StructuredSystem, k: FeedbackPattern) -> np.ndarray:
    mat = k.matrix
    if mat.shape != (sys.m, sys.p):
        raise DimensionError(f"feedback pattern must be {sys.m}x{sys.p}, got {mat.rows}x{mat.cols}")
    n, m = sys.n, sys.m
    return np.column_stack((n + m + mat.col_idx, n + mat.row_idx))


def build_closed_loop_digraph(sys: StructuredSystem, k: FeedbackPattern) -> SystemDigraph:
    """Closed-loop digraph with all four edge sets (``y_j -> u_i`` per nonzero ``K[i, j]``)."""
    edges = np.vstack(_system_edges(sys) + [_feedback_edges(sys, k)])
    return SystemDigraph(Digraph(sys.n + sys.m + sys.p, edges), sys.n, sys.m, sys.p)


def build_open_loop_digraph(sys: StructuredSystem) -> SystemDigraph:
    return build_closed_loop_digraph(sys, FeedbackPattern.zeros(sys.m, sys.p))


@dataclass(frozen=True)
class AssumptionVerdict:
    """Dedicated inputs, dedicated outputs and structural cyclicity, checked separately."""

    b_identity: bool
    c_identity: bool
    structurally_cyclic: bool
    explanation: str

    @property
    def holds(self) -> bool:
        return self.b_identity and self.c_identity and self.structurally_cyclic

    def failed_clauses(self) -> list[str]:
        out = []
        if not self.b_identity:
            out.append("input pattern is not the n x n identity")
        if not self.c_identity:
            out.append("output pattern is not the n x n identity")
        if not self.structurally_cyclic:
            out.append("state bipartite graph has no perfect matching (not structurally cyclic)")
        return out


def is_structurally_cyclic(a: StructuredMatrix) -> bool:
    """Whether the row/column bipartite graph of ``a`` has a perfect matching."""
    if a.rows != a.cols:
        raise DimensionError(f"state pattern must be square, got {a.rows}x{a.cols}")
    return has_perfect_matching(BipartiteGraph.from_pattern(a.rows, a.cols, a.row_idx, a.col_idx))


def check_assumption(sys: StructuredSystem) -> AssumptionVerdict:
    b_ok = sys.b.is_identity() and sys.b.rows == sys.n
    c_ok = sys.c.is_identity() and sys.c.cols == sys.n
    cyclic = is_structurally_cyclic(sys.a)
    verdict = AssumptionVerdict(b_ok, c_ok, cyclic, "")
    failed = verdict.failed_clauses()
    explanation = "; ".join(failed) if failed else "dedicated inputs and outputs, structurally cyclic"
    return AssumptionVerdict(b_ok, c_ok, cyclic, explanation)
