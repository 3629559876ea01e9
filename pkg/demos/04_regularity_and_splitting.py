"""
Cauchy-Riemann checks and the splitting
=======================================

On each slice a weak slice regular function satisfies
1/2 (d/dx + L_I d/dy) f = 0.  In an I-basis it splits into n ordinary
holomorphic functions.
"""

import numpy as np

from weakslice.algebra import builtin_algebra
from weakslice.linalg import standard_complex_structure
from weakslice.sliceregular import (
    SlicePolynomial,
    component_evaluator,
    cr_residual,
    make_grid,
    recompose,
    slice_evaluator,
    split,
)

H = builtin_algebra("quaternion")
i = H.basis(1)
grid = make_grid(1)

sq = SlicePolynomial.monomial(H, (2,))
bar = SlicePolynomial(1, H, sq.terms, conjugate=True)
for name, P in (("q^2", sq), ("conjugate q^2", bar)):
    rep = cr_residual(slice_evaluator(P, i), i, grid)
    print(f"{name:14s} max CR residual {rep.max_residual:.2e}  passed={rep.passed}")

# %%
# Splitting q^2 on the slice of i
# -------------------------------

f = slice_evaluator(sq, i)
dec = split(f, i, grid)
print("components per point:", dec.components.shape[1])
print("recomposition error:", np.abs(recompose(dec) - [f(x, y) for x, y in grid]).max())
for l in range(2):
    g = component_evaluator(f, dec.basis, l)
    print(f"F_{l + 1} CR residual:", cr_residual(g, standard_complex_structure(1), grid).max_residual)
