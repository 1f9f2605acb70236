"""Fold a symmetric graph into small weighted digraphs, one per block.

Run with ``python3 demos/folding.py``. Each folded graph is printed as DOT
text and its adjacency matrix is compared with the matching block.
"""

import numpy as np

from eqdecomp import decompose_basic, export_dot, fold_family, parse_cycles, weighted_adjacency
from eqdecomp.serialize import parse_edge_list

EDGES = "# n = 10\n1 2\n1 5\n1 8\n2 3\n2 4\n2 5\n2 8\n5 6\n5 7\n5 8\n8 9\n8 10\n"

G = parse_edge_list(EDGES)
psi = parse_cycles("(2,8,5)(3,9,7)(4,10,6)", G.n)
dec = decompose_basic(G.weight_matrix(), psi)

for F in fold_family(G, psi, dec.plan):
    print(export_dot(F))
    target = dec.divisor if F.m == 0 else dec.blocks[F.m - 1]
    print(f"adjacency of G{F.m} matches its block:", np.allclose(weighted_adjacency(F), target), "\n")
