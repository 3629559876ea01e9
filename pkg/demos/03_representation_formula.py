"""
Reconstructing a slice from other slices
========================================

Values of a slice regular function on the slices of J_1, ..., J_k
determine its values on the slice of any unit I whose (1 | L_I) row
annihilates the common kernel.
"""

import numpy as np

from weakslice.algebra import builtin_algebra, sample_slice_unit
from weakslice.repform import (
    build_zeta,
    kernel_membership,
    reconstruct_path,
    slice_solution,
    two_point_inverse,
)
from weakslice.slicecone import SlicePath
from weakslice.sliceregular import SlicePolynomial, slice_evaluator

H = builtin_algebra("quaternion")
i, j = H.basis(1), H.basis(2)
P = SlicePolynomial.monomial(H, (3,), H.element([1.0, 0.5, -0.25, 2.0]))
arc = SlicePath.semicircle(32)

J = [i, -i]
system = build_zeta(J)
samples = [[slice_evaluator(P, u)(x, y) for x, y in zip(arc.x, arc.y)] for u in J]
rebuilt = reconstruct_path(samples, system, j)
direct = np.array([slice_evaluator(P, j)(x, y) for x, y in zip(arc.x, arc.y)])
print("quaternion q^3 a, error on the j slice:", np.abs(rebuilt - direct).max())

# %%
# A singular pair in the sedenions
# --------------------------------
# L_{e1} - L_{-e10} is not invertible, so the two-point formula breaks.
# The pseudoinverse route still works once the candidate set is enlarged.

S = builtin_algebra("sedenion")
e = S.basis
try:
    two_point_inverse(e(1), -e(10))
except np.linalg.LinAlgError as exc:
    print("two-point:", exc)

rng = np.random.default_rng(1)
cands = [e(1), -e(10)] + [sample_slice_unit(S, rng) for _ in range(3)]
sol = slice_solution(cands)
sys_s = build_zeta(sol)
print("slice-solution length", sol.k, "kernel dim", sys_s.kernel_dim)
print("all candidates admissible:", all(kernel_membership(c, sys_s) for c in cands))
