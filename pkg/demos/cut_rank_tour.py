"""
Cut-rank and connectivity on a five-cycle
=========================================

Cut-rank measures how tangled a vertex set is with the rest of the graph,
as the GF(2) rank of the adjacency block between the two sides. The
connectivity between two sets is the smallest cut-rank of anything that
separates them.
"""

from __future__ import annotations

from vmlink import Graph, cut_rank, kappa, local_complement, pivot
from vmlink.graph6 import encode

c5 = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
print("C5 as graph6:", encode(c5))

# Two adjacent vertices see the rest of the cycle through two independent rows.
print("rho({0,1}) =", cut_rank(c5, 0b00011))

# Any set separating 0 from 2 costs at least one; {0} alone achieves it.
res = kappa(c5, 0b00001, 0b00100)
print("kappa({0},{2}) =", res.value, "witness mask", hex(res.witness))

# Local complementation and pivoting leave every cut-rank unchanged.
lc = local_complement(c5, 0)
pv = pivot(c5, 0, 1)
same = all(cut_rank(c5, x) == cut_rank(lc, x) == cut_rank(pv, x) for x in range(32))
print("cut-rank preserved under C5*0 and C5^01:", same)
