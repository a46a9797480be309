"""
Selection time on long chains
=============================

A chain of ``n`` self-looped states needs one feedback link. The selection
runs a matching check, one strongly connected component pass and an
augmentation pass, each linear in the pattern size, so time per state
should stay flat as ``n`` grows.
"""

import time

import numpy as np

from sparsefb import StructuredMatrix, StructuredSystem, select_sparsest_feedback


def chain(n):
    d = np.arange(n)
    pos = np.column_stack((np.r_[d, d[1:]], np.r_[d, d[:-1]]))
    return StructuredSystem.dedicated(StructuredMatrix(n, n, pos))


for n in (10**4, 10**5, 10**6):
    system = chain(n)
    t0 = time.perf_counter()
    result = select_sparsest_feedback(system)
    elapsed = time.perf_counter() - t0
    print(f"n={n:>8}  links={result.cardinality}  {elapsed:6.2f}s  {elapsed / n * 1e6:.2f} us/state")
