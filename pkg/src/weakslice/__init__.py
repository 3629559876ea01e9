"""Numerical weak slice analysis over LSCS algebras."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraSpec,
    Element,
    builtin_algebra,
    cayley_dickson,
    clifford_algebra,
    is_imaginary_unit,
    is_left_alternative,
    is_lscs,
    is_slice_unit,
    left_mul_matrix,
    multiply,
)
from .linalg import i_basis, kernel_intersection, null_space_basis, pinv, verify_mp_conditions
from .repform import (
    build_zeta,
    kernel_membership,
    reconstruct,
    reconstruct_path,
    slice_solution,
    stem_solve,
    two_point_inverse,
)
from .slicecone import SlicePath, SlicePoint, psi_embed
from .sliceregular import SlicePolynomial, cr_residual, evaluate, split
