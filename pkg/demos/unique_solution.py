"""
A system with exactly one sparsest feedback
===========================================

Seven states: ``x1 -> x2``, then ``x2`` branches to ``x3`` and ``x4``, ``x4``
and a second chain ``x5 -> x6`` both feed ``x7``. Exhaustive search over
all feedback patterns of size two finds a single feasible one, and the
linear-time selection lands on it too.
"""

from sparsefb import brute_force_min_feedback, load_instance, select_sparsest_feedback
from sparsefb.instance import fixture_path

system = load_instance(fixture_path("merging_chains.json")).system

# 49 possible links; two-link patterns number 1176, well within the search budget
exact = brute_force_min_feedback(system, max_card=3)
print("minimum:", exact.min_cardinality, "after", exact.explored, "candidates")
for k in exact.all_optima:
    print("optimum:", [(i + 1, j + 1) for i, j in k.positions()])

fast = select_sparsest_feedback(system)
print("selected:", [(i + 1, j + 1) for i, j in fast.k.positions()])
print("same pattern:", fast.k == exact.all_optima[0])
