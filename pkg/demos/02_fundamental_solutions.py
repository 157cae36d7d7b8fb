"""
From a cost to operator data and back
=====================================

A fair and balanced cost determines anti-linear maps J between the edge spaces.
The graph and its weights can be read back off those maps.
"""
import numpy as np

from qhs.graph_model import catalog, find_isomorphism
from qhs.fusion_data import block_spectrum, build_solution, solution_to_graph, verify_solution

###############################################################################
# The two-vertex cycle at q = -1/2: one arrow each way per orientation.
g, w, dp = catalog("A_cycle", n=1, q=-0.5)
s = build_solution(g, w, dp)
for key, M in sorted(s.jmaps.items()):
    print(key)
    print(np.round(M, 6))

###############################################################################
# J_wv J_vw is -sgn(q) on every block, and the traces at each vertex add up to
# |q| + 1/|q|.
print(verify_solution(s, dp).passed)

###############################################################################
# The spectra of the reverse blocks are reciprocal.
a = block_spectrum(s.jmaps[("0", "1")])
b = block_spectrum(s.jmaps[("1", "0")])
print(np.sort(a), np.sort(1 / b))

###############################################################################
# Reading the graph back gives an isomorphic weighted graph.
g2, w2 = solution_to_graph(s, dp)
print(find_isomorphism(g, w, g2, w2))
