"""
Complex structures and the pseudoinverse
========================================

Left multiplication by a slice unit is a complex structure on R^{2n}.
Every such structure is conjugate to the standard block matrix, and the
conjugating basis is found by a greedy Gram-Schmidt sweep.
"""

import numpy as np

from weakslice.algebra import builtin_algebra, left_mul_matrix, sample_slice_unit
from weakslice.linalg import (
    conjugated_structure,
    i_basis,
    pinv,
    standard_complex_structure,
    verify_mp_conditions,
)

O = builtin_algebra("octonion")
rng = np.random.default_rng(0)
u = sample_slice_unit(O, rng)
L = left_mul_matrix(u)
print("L^2 + id =", np.abs(L @ L + np.eye(8)).max())

B = i_basis(L)
C = conjugated_structure(L, B)
print("D^-1 L D vs standard:", np.abs(C - standard_complex_structure(4)).max())

# %%
# Moore-Penrose residuals
# -----------------------
# The four defining conditions, measured for a rank-deficient matrix.

M = rng.standard_normal((12, 3)) @ rng.standard_normal((3, 9))
print(verify_mp_conditions(M, pinv(M)).as_dict())
