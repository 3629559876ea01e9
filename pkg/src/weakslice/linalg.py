"""Dense real linear algebra: SVD pseudoinverse, kernels, complex structures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

__all__ = [
    "ComplexStructure",
    "IBasis",
    "MPResiduals",
    "conjugated_structure",
    "i_basis",
    "is_complex_structure",
    "kernel_intersection",
    "null_space_basis",
    "numerical_rank",
    "pinv",
    "standard_complex_structure",
    "verify_mp_conditions",
]


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def _rank_cutoff(s: np.ndarray, shape: tuple[int, int], rank_tol: float) -> float:
    if rank_tol < 0:
        raise ValueError("rank_tol must be >= 0")
    if rank_tol > 0:
        return rank_tol
    smax = s[0] if s.size else 0.0
    return max(shape) * np.finfo(float).eps * smax


def numerical_rank(M, rank_tol: float = 0.0) -> int:
    M = _as_matrix(M)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    return int(np.sum(s > _rank_cutoff(s, M.shape, rank_tol)))


def pinv(M, rank_tol: float = 0.0) -> np.ndarray:
    """Moore-Penrose inverse via SVD.

    Parameters
    ----------
    M : (m, k) array_like
    rank_tol : float
        Singular values ``<= rank_tol`` are treated as zero. ``0`` selects
        ``max(m, k) * eps * sigma_max``.

    Raises
    ------
    numpy.linalg.LinAlgError
        If the SVD does not converge.
    """
    M = _as_matrix(M)
    if M.size == 0:
        return np.zeros(M.shape[::-1])
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    keep = s > _rank_cutoff(s, M.shape, rank_tol)
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    return (Vt.T * inv_s) @ U.T


@dataclass(frozen=True)
class MPResiduals:
    """Relative Frobenius residuals of the four Moore-Penrose conditions."""

    mpm: float
    pmp: float
    mp_sym: float
    pm_sym: float

    def max(self) -> float:
        return max(self.mpm, self.pmp, self.mp_sym, self.pm_sym)

    def as_dict(self) -> dict:
        return {"MPM=M": self.mpm, "PMP=P": self.pmp, "(MP)^T=MP": self.mp_sym, "(PM)^T=PM": self.pm_sym}


def _scale(x: float) -> float:
    return x if x > 0 else 1.0


def verify_mp_conditions(M, P) -> MPResiduals:
    M = _as_matrix(M)
    P = _as_matrix(P)
    if P.shape != M.shape[::-1]:
        raise ValueError(f"P must have shape {M.shape[::-1]}, got {P.shape}")
    nM = _scale(np.linalg.norm(M))
    nP = _scale(np.linalg.norm(P))
    MP = M @ P
    PM = P @ M
    return MPResiduals(
        mpm=float(np.linalg.norm(MP @ M - M) / nM),
        pmp=float(np.linalg.norm(PM @ P - P) / nP),
        mp_sym=float(np.linalg.norm(MP.T - MP) / _scale(nM * nP)),
        pm_sym=float(np.linalg.norm(PM.T - PM) / _scale(nM * nP)),
    )


def null_space_basis(M, rank_tol: float = 0.0) -> np.ndarray:
    """Orthonormal columns spanning the numerical kernel of ``M``."""
    M = _as_matrix(M)
    k = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(k)
    U, s, Vt = np.linalg.svd(M, full_matrices=True)
    rank = int(np.sum(s > _rank_cutoff(s, M.shape, rank_tol)))
    return Vt[rank:].T.copy()


def kernel_intersection(Ms: Sequence, rank_tol: float = 0.0) -> np.ndarray:
    """Orthonormal basis of the common kernel of ``Ms`` (kernel of their vertical stack)."""
    if len(Ms) == 0:
        raise ValueError("need at least one matrix")
    Ms = [_as_matrix(M) for M in Ms]
    cols = {M.shape[1] for M in Ms}
    if len(cols) != 1:
        raise ValueError(f"column counts differ: {sorted(cols)}")
    return null_space_basis(np.vstack(Ms), rank_tol)


def standard_complex_structure(n: int) -> np.ndarray:
    """The block matrix ``[[0, -I_n], [I_n, 0]]``."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = -np.eye(n)
    J[n:, :n] = np.eye(n)
    return J


def is_complex_structure(M, tol: float = 1e-10) -> bool:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2 or M.shape[0] == 0:
        return False
    return bool(np.max(np.abs(M @ M + np.eye(M.shape[0]))) <= tol)


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    matrix: np.ndarray

    def __post_init__(self):
        M = _as_matrix(self.matrix)
        if not is_complex_structure(M, 1e-12):
            raise ValueError("matrix does not square to -identity within 1e-12")
        M = M.copy()
        M.flags.writeable = False
        object.__setattr__(self, "matrix", M)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2


def _structure_matrix(I: Union[ComplexStructure, np.ndarray]) -> np.ndarray:
    if isinstance(I, ComplexStructure):
        return I.matrix
    return _as_matrix(I)


@dataclass(frozen=True, eq=False)
class IBasis:
    """Vectors ``theta_1..theta_n`` with ``D = (theta, I theta)`` invertible."""

    structure: np.ndarray
    theta: np.ndarray  # (2n, n), columns
    d_matrix: np.ndarray
    condition: float


def i_basis(I, order: Optional[Sequence[int]] = None, threshold: float = 1e-8) -> IBasis:
    """Greedy I-basis from standard basis vectors.

    Scans ``e_k`` in ``order`` (default ``0, 1, ..., 2n-1``) and accepts a
    vector when its residual after projection onto ``span{theta, I theta}``
    exceeds ``threshold``. The span is ``I``-invariant, so each accepted
    vector adds two dimensions.
    """
    M = _structure_matrix(I)
    dim = M.shape[0]
    if M.shape[0] != M.shape[1] or dim % 2 or dim == 0:
        raise ValueError(f"complex structure must be square and even-sized, got {M.shape}")
    n = dim // 2
    order = range(dim) if order is None else order
    Q = np.zeros((dim, 0))
    accepted = []
    for k in order:
        if len(accepted) == n:
            break
        v = np.zeros(dim)
        v[k] = 1.0
        r = v - Q @ (Q.T @ v)
        r -= Q @ (Q.T @ r)
        if np.linalg.norm(r) <= threshold:
            continue
        accepted.append(k)
        for w in (r, M @ r):
            w = w - Q @ (Q.T @ w)
            w -= Q @ (Q.T @ w)
            nw = np.linalg.norm(w)
            if nw <= threshold:
                raise np.linalg.LinAlgError("structure is not a complex structure (I-image dependent)")
            Q = np.column_stack([Q, w / nw])
    if len(accepted) < n:
        raise np.linalg.LinAlgError(
            f"greedy scan found {len(accepted)} of {n} basis vectors; not a complex structure"
        )
    theta = np.eye(dim)[:, accepted]
    D = np.hstack([theta, M @ theta])
    return IBasis(M, theta, D, float(np.linalg.cond(D)))


def conjugated_structure(I, B: IBasis) -> np.ndarray:
    """``D^{-1} I D``; equals the standard structure for an I-basis of ``I``."""
    M = _structure_matrix(I)
    D = B.d_matrix
    assert abs(np.linalg.det(D)) > 0, "singular basis matrix"
    return np.linalg.solve(D, M @ D)
