"""Decomposing a matrix never enlarges its Gershgorin region, and often shrinks it.

Run with ``python3 demos/gershgorin_shrinkage.py``.
"""

import numpy as np

from eqdecomp import block_region, decompose, planted_basic, region, region_contained, union_area

rng = np.random.default_rng(3)

for trial in range(5):
    M, psi = planted_basic(rng, N=2, r=4, k=3, mode="nonnegative")
    dec = decompose(M, psi)
    before = region(M)
    after = block_region([b.matrix for b in dec.blocks])
    a0, a1 = union_area(before), union_area(after)
    print(f"trial {trial}: area {a0:9.3f} -> {a1:9.3f}  "
          f"({100 * (1 - a1 / a0):5.1f}% smaller), contained = {region_contained(after, before)}")
