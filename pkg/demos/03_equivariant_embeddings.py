"""
Equivariant embeddings
======================

Block unitaries between two fundamental solutions, checked against the
compatibility diagram.
"""
import cmath

import numpy as np

from qhs.graph_model import catalog
from qhs.morphism_checker import dimension_prune, podles_into_suq2, rp2_into_podles0, verify_psi

###############################################################################
# A window of the Podles sphere at x = 0 mapped into SU_q(2) itself.
for lam in (1.0, cmath.exp(0.8j)):
    rep = verify_psi(podles_into_suq2(q=0.5, x=0.0, lam=lam))
    print("lam", np.round(lam, 3), rep.to_dict()["verdict"], rep.residual)

###############################################################################
# The D_inf* window inside the Podles window at x = 0.  One block is fixed by
# hand; the rest are phases found by propagation.
m = rp2_into_podles0(q=0.5)
print(np.round(m.psi[("0", "1")], 6))
print(verify_psi(m).passed)

###############################################################################
# Scaling a block by 1% breaks unitarity.
m.psi[("0", "1")] = 1.01 * m.psi[("0", "1")]
print(verify_psi(m).reasons)

###############################################################################
# Dimension counting alone already singles out x = 0 among the Podles windows.
gX, wX, _ = catalog("D_inf_star", q=0.5, window=3)
for x in (0.0, 0.25, 0.5):
    gY, wY, _ = catalog("A_inf_inf", q=0.5, x=x, window=5)
    print("x =", x, "gradings:", len(dimension_prune(gX, gY, 2, wX, wY).gradings))
