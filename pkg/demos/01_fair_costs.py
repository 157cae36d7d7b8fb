"""
Fair and balanced costs on small graphs
=======================================

Checking catalog weights, searching for costs, and the norm bound.
"""
import numpy as np

from qhs.graph_model import DeformationParameter, catalog, catalog_shape, make_graph
from qhs.cost_engine import graph_norm, perron_cost, solve_cost, verify_fair_balanced

###############################################################################
# The affine E6 graph with unit-ratio weights passes at q = 1.
g, w, dp = catalog("E6_affine", q=1.0)
report = verify_fair_balanced(g, w, dp)
print(report.verdict, "max residual", report.residual)

###############################################################################
# The same shape has no cost when |q| < 1.
for q in (0.5, 0.9, -0.5):
    print("E6 at q =", q, "->", solve_cost(g, DeformationParameter(q)).status)

###############################################################################
# Two vertices joined by a single pair of arrows never carry a cost.
pair, _ = make_graph(["a", "b"], [("a", "b"), ("b", "a")])
print("pair:", [solve_cost(pair, DeformationParameter(q)).status for q in (0.3, -0.7, 1.0)])

###############################################################################
# A cost forces the graph norm below |T|.  At equality the cost is the
# Perron-Frobenius one: W(v -> w) = xi_w / xi_v.
g = catalog_shape("A_cycle", n=3)
nrm = graph_norm(g)
print("norm", nrm)
dp = DeformationParameter.from_T(-nrm)
cost, _ = solve_cost(g, dp).solutions[0]
pc = perron_cost(g, dp.T)
print("largest gap to the Perron cost:", max(abs(cost[k] - pc[k]) for k in cost))

###############################################################################
# Above the norm the cycle carries exactly two costs: |q| on one orientation
# and 1/|q| on the other, and the mirror image.  Neither sits in a family.
res = solve_cost(g, DeformationParameter(0.5))
print("family:", res.family)
for cost, _ in res.solutions:
    print({k: round(v, 6) for k, v in sorted(cost.items()) if k.startswith("0")})
