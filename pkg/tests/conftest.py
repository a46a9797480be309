from __future__ import annotations

import pytest

from sparsefb import FeedbackPattern, StructuredMatrix, StructuredSystem, load_instance
from sparsefb.instance import fixture_path


def dedicated(n: int, state_edges, loops: bool = True) -> StructuredSystem:
    """Dedicated-I/O system from 1-based state edges ``(from, to)``."""
    pos = [(t - 1, f - 1) for f, t in state_edges]
    if loops:
        pos += [(i, i) for i in range(n)]
    return StructuredSystem.dedicated(StructuredMatrix(n, n, pos))


def feedback(n: int, entries) -> FeedbackPattern:
    """Square feedback pattern from 1-based ``(input, output)`` entries."""
    return FeedbackPattern.from_positions(n, n, [(i - 1, j - 1) for i, j in entries])


@pytest.fixture
def three_chains() -> StructuredSystem:
    return load_instance(fixture_path("three_chains.json")).system


@pytest.fixture
def merging_chains() -> StructuredSystem:
    return load_instance(fixture_path("merging_chains.json")).system
