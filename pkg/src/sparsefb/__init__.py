"""Structurally fixed modes and sparsest feedback selection for structured systems."""
from .augment import AugmentationResult, augment_strong_connectivity
from .bipartite import (
    BipartiteGraph,
    Matching,
    has_perfect_matching,
    has_spanning_cycle_family,
    max_matching,
    spanning_cycle_family,
)
from .graph import Digraph, SccDecomposition, is_strongly_connected, reachable_from, scc
from .instance import Instance, InstanceError, dump_instance, export_dot, load_instance, parse_instance
from .oracle import OracleResult, SearchSpaceError, brute_force_min_feedback, generate_random_system
from .select import (
    AssumptionError,
    SelectionCase,
    SelectionResult,
    consolidate_feedback,
    count_state_covering_sccs,
    merge_scc_pair,
    select_sparsest_feedback,
    state_covering_components,
)
from .sfm import SfmReport, check_condition_a, check_condition_b, check_no_sfm, feasible_set_nonempty
from .system import (
    AssumptionVerdict,
    DimensionError,
    EdgeKind,
    FeedbackPattern,
    StructuredMatrix,
    StructuredSystem,
    SystemDigraph,
    VertexKind,
    build_closed_loop_digraph,
    build_open_loop_digraph,
    build_state_digraph,
    check_assumption,
    is_structurally_cyclic,
)

__version__ = "0.1.0"
