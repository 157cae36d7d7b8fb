"""
K-groups from the fusion graph
==============================

K0 and K1 are the cokernel and kernel of an integer block matrix built from the
adjacency matrix, computed through the Smith normal form.
"""
from qhs.graph_model import catalog_shape
from qhs.ktheory import format_k_groups, gamma_matrix, k_groups, phi_matrix, smith_normal_form

###############################################################################
# A point with n loops gives Z/(n - 2).
for n in range(2, 8):
    print(n, "loops:", format_k_groups(*k_groups(catalog_shape("point_loops", loops=n))))

###############################################################################
# The transforms are returned as well: U M V = S.
phi = phi_matrix(gamma_matrix(catalog_shape("point_loops", loops=4)))
S, U, V = smith_normal_form(phi)
print(phi, S, U, V, sep="\n")

###############################################################################
# Affine diagrams give Z plus a finite group.
for name, params in [("E6_affine", {}), ("E7_affine", {}), ("E8_affine", {}), ("D_affine", {"n": 4})]:
    print(name, format_k_groups(*k_groups(catalog_shape(name, **params))))
