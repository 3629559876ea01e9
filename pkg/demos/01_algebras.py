"""
Hypercomplex algebras and their slice units
===========================================

Doubling the reals four times gives the sedenions.  They have zero
divisors, and not every square root of -1 is a slice unit there.
"""

import numpy as np

from weakslice.algebra import builtin_algebra, is_imaginary_unit, is_slice_unit, left_mul_matrix

S = builtin_algebra("sedenion")
e = S.basis

# A few table entries: e1 e2 = e3, e1 e10 = -e11
print("e1*e2  =", np.flatnonzero((e(1) * e(2)).coeffs), (e(1) * e(2)).coeffs.sum())
print("e1*e10 =", np.flatnonzero((e(1) * e(10)).coeffs), (e(1) * e(10)).coeffs.sum())

# %%
# Zero divisors
# -------------
# The product below vanishes exactly, so left multiplication by e1 + e10
# is a singular 16x16 matrix.

print("(e1+e10)(e5+e14) =", (e(1) + e(10)) * (e(5) + e(14)))
sv = np.linalg.svd(left_mul_matrix(e(1) + e(10)), compute_uv=False)
print("smallest singular values:", sv[-4:])

# %%
# Imaginary units versus slice units
# ----------------------------------
# s = (e1 + e10)/sqrt2 squares to -1, but L_s squared is not -id.

s = (e(1) + e(10)) / np.sqrt(2)
print("s^2 = -1:", is_imaginary_unit(s), "  L_s^2 = -id:", is_slice_unit(s))
print("e1 is both:", is_imaginary_unit(e(1)), is_slice_unit(e(1)))
