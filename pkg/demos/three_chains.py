"""
Closing three independent chains with feedback
==============================================

Nine states form three chains ``x1 -> x2 -> x3``, ``x4 -> x5 -> x6`` and
``x7 -> x8 -> x9``, each state with a self-loop. Every state has its own
input and output. We ask for the fewest output-to-input links that leave
no structurally fixed mode, then watch the rewiring step glue the
feedback loops together without adding links.
"""

from sparsefb import (
    build_closed_loop_digraph,
    check_no_sfm,
    count_state_covering_sccs,
    load_instance,
    select_sparsest_feedback,
)
from sparsefb.instance import export_dot, fixture_path
from sparsefb.select import merge_scc_pair, state_covering_components

system = load_instance(fixture_path("three_chains.json")).system

# the state digraph has three source and three sink components, so three links
result = select_sparsest_feedback(system)
print("cardinality:", result.cardinality)
print("K entries (input, output):", [(i + 1, j + 1) for i, j in result.k.positions()])

# a different optimum: close each chain on itself
k = load_instance(fixture_path("three_chains_beta3.json")).k
sd = build_closed_loop_digraph(system, k)
print("no fixed modes:", check_no_sfm(system, k).no_sfm)
print("state-covering components:", count_state_covering_sccs(sd))

# swap the heads of two loops; the link count stays at three
while count_state_covering_sccs(sd) > 1:
    first, second = state_covering_components(sd)[:2]
    k = merge_scc_pair(sd, k, first, second)
    sd = build_closed_loop_digraph(system, k)
    print("after merge:", [(i + 1, j + 1) for i, j in k.positions()],
          "components:", count_state_covering_sccs(sd))

# Graphviz text; feedback links come out red
print(export_dot(sd))
