"""Path-representation machinery: zeta(J), its J-slice inverse, slice-solutions.

For a tuple ``J = (J_1, ..., J_k)`` of slice units, ``zeta(J)`` is the
``2nk x 4n`` stack of blocks ``(1 | L_{J_l})`` and the J-slice inverse is

    zeta^+(J) = pinv(D_J^{-1} zeta(J)) D_J^{-1},

with ``D_J`` the block-diagonal matrix of per-unit I-basis matrices.  A
weak slice regular function sampled on the slices ``J_l`` is recovered on a
slice ``I`` by ``(1 | L_I) zeta^+(J) (f(x + y J_1), ..., f(x + y J_k))``
whenever ``ker(1, L_I)`` contains the common kernel of the ``(1, L_{J_l})``.
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.linalg import block_diag

from .algebra import Element, is_slice_unit, left_mul_matrix
from .linalg import i_basis, kernel_intersection, null_space_basis, pinv

__all__ = [
    "KernelMembershipWarning",
    "SingularDifferenceError",
    "StemValue",
    "StructureReport",
    "UnitTuple",
    "ZetaSystem",
    "SIGMA",
    "brute_force_min_kernel",
    "build_zeta",
    "classical_formula",
    "kernel_dimension",
    "kernel_membership",
    "one_i",
    "reconstruct",
    "reconstruct_path",
    "sigma_matrix",
    "slice_solution",
    "stem_solve",
    "two_point_inverse",
    "verify_structure_identities",
]

SIGMA = np.array([[0.0, -1.0], [1.0, 0.0]])


class SingularDifferenceError(np.linalg.LinAlgError):
    """``L_{J1} - L_{J2}`` is not numerically invertible."""


class KernelMembershipWarning(UserWarning):
    pass


def sigma_matrix(n: int) -> np.ndarray:
    """The stem-pair operator ``[[0, -1], [1, 0]]`` acting on ``R^{2n} x R^{2n}``."""
    return np.kron(SIGMA, np.eye(2 * n))


@dataclass(frozen=True, eq=False)
class UnitTuple:
    units: tuple
    lmats: np.ndarray  # (k, 2n, 2n)

    @classmethod
    def of(cls, units: Sequence[Element], tol: float = 1e-10) -> "UnitTuple":
        units = tuple(units)
        if not units:
            raise ValueError("need at least one unit")
        alg = units[0].algebra
        for u in units:
            if u.algebra is not alg:
                raise ValueError("units must belong to one algebra")
            if not is_slice_unit(u, tol):
                raise ValueError(f"{u!r} is not a slice unit")
        return cls(units, np.stack([left_mul_matrix(u) for u in units]))

    @property
    def k(self) -> int:
        return len(self.units)

    @property
    def dim(self) -> int:
        return self.lmats.shape[1]

    def __len__(self):
        return self.k


def one_i(L: np.ndarray) -> np.ndarray:
    """The ``2n x 4n`` block row ``(1 | L)``."""
    return np.hstack([np.eye(L.shape[0]), L])


def _lmat(I) -> np.ndarray:
    return left_mul_matrix(I) if isinstance(I, Element) else np.asarray(I, dtype=float)


@dataclass(frozen=True, eq=False)
class ZetaSystem:
    J: UnitTuple
    Z: np.ndarray
    DJ: np.ndarray
    Zplus: np.ndarray
    kerbasis: np.ndarray

    @property
    def kernel_dim(self) -> int:
        return self.kerbasis.shape[1]

    @property
    def diagJ(self) -> np.ndarray:
        return block_diag(*self.J.lmats)


def build_zeta(J, orders: Optional[Sequence[Optional[Sequence[int]]]] = None, rank_tol: float = 0.0) -> ZetaSystem:
    """Assemble ``zeta(J)``, ``D_J`` and the J-slice inverse.

    ``orders`` optionally fixes the scan order of the greedy I-basis per unit.
    """
    if not isinstance(J, UnitTuple):
        J = UnitTuple.of(J)
    orders = orders if orders is not None else [None] * J.k
    Z = np.vstack([one_i(L) for L in J.lmats])
    DJ = block_diag(*[i_basis(L, order).d_matrix for L, order in zip(J.lmats, orders)])
    DJinv = np.linalg.inv(DJ)
    Zplus = pinv(DJinv @ Z, rank_tol) @ DJinv
    kerbasis = null_space_basis(Z, rank_tol)
    return ZetaSystem(J, Z, DJ, Zplus, kerbasis)


def kernel_membership(I, sys: ZetaSystem, tol: float = 1e-9) -> bool:
    """Whether ``ker(1, L_I)`` contains the common kernel of the tuple."""
    if sys.kernel_dim == 0:
        return True
    return bool(np.linalg.norm(one_i(_lmat(I)) @ sys.kerbasis) <= tol)


def kernel_dimension(units: Sequence[Element], rank_tol: float = 0.0) -> int:
    """Dimension of the common kernel of the blocks ``(1, L_u)``."""
    if not units:
        raise ValueError("empty unit list")
    return kernel_intersection([one_i(left_mul_matrix(u)) for u in units], rank_tol).shape[1]


def slice_solution(candidates: Sequence[Element], rank_tol: float = 0.0) -> UnitTuple:
    """Greedy slice-solution relative to a finite candidate set.

    Starting from the empty tuple (common kernel of dimension ``4n``), append
    the first candidate that strictly shrinks the common kernel, and repeat
    until none does.  At that point the common kernel lies in
    ``ker(1, L_I)`` for every candidate.
    """
    if not candidates:
        raise ValueError("candidates must be nonempty")
    rows = [one_i(left_mul_matrix(c)) for c in candidates]
    chosen: list[int] = []
    m = rows[0].shape[1]
    improved = True
    while improved:
        improved = False
        for idx, row in enumerate(rows):
            if idx in chosen:
                continue
            dim = kernel_intersection([rows[i] for i in chosen] + [row], rank_tol).shape[1]
            if dim < m:
                chosen.append(idx)
                m = dim
                improved = True
                break
    return UnitTuple.of([candidates[i] for i in chosen])


def brute_force_min_kernel(candidates: Sequence[Element], max_size: int = 3, rank_tol: float = 0.0) -> int:
    """Smallest common-kernel dimension over all sub-tuples of size ``<= max_size``."""
    rows = [one_i(left_mul_matrix(c)) for c in candidates]
    best = rows[0].shape[1]
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(range(len(rows)), size):
            best = min(best, kernel_intersection([rows[i] for i in combo], rank_tol).shape[1])
    return best


def two_point_inverse(J1, J2, ratio: float = 1e-8) -> np.ndarray:
    """Closed-form inverse of ``[[1, L1], [1, L2]]``.

    Raises
    ------
    SingularDifferenceError
        If ``sigma_min(L1 - L2) <= ratio * sigma_max(L1 - L2)``.
    """
    L1, L2 = _lmat(J1), _lmat(J2)
    diff = L1 - L2
    s = np.linalg.svd(diff, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= ratio * s[0]:
        raise SingularDifferenceError(
            f"L_J1 - L_J2 is singular (sigma_min/sigma_max = {s[-1] / s[0] if s[0] else 0.0:.3e})"
        )
    Dinv = np.linalg.inv(diff)
    return np.block([[Dinv @ L1, -Dinv @ L2], [Dinv, -Dinv]])


def classical_formula(f1: np.ndarray, f2: np.ndarray, J1, J2, I) -> np.ndarray:
    """``(L_I - L2)[(L1 - L2)^{-1} f1] - (L_I - L1)[(L1 - L2)^{-1} f2]``."""
    L1, L2, LI = _lmat(J1), _lmat(J2), _lmat(I)
    diff = L1 - L2
    return (LI - L2) @ np.linalg.solve(diff, f1) - (LI - L1) @ np.linalg.solve(diff, f2)


def reconstruct(values: Sequence[np.ndarray], sys: ZetaSystem, I, check_tol: float = 1e-9) -> np.ndarray:
    """Value on the slice of ``I`` from the values on the slices of ``J``.

    Warns with :class:`KernelMembershipWarning` when ``I`` is outside the
    kernel condition; the value is computed anyway.
    """
    stacked = _stack(values, sys)
    LI = _lmat(I)
    if not kernel_membership(LI, sys, check_tol):
        warnings.warn("target unit fails the kernel condition; formula not guaranteed",
                      KernelMembershipWarning, stacklevel=2)
    return one_i(LI) @ (sys.Zplus @ stacked)


def _stack(values, sys: ZetaSystem) -> np.ndarray:
    vals = [np.asarray(v, dtype=float).reshape(-1) for v in values]
    if len(vals) != sys.J.k or any(v.shape[0] != sys.J.dim for v in vals):
        raise ValueError(f"expected {sys.J.k} vectors of length {sys.J.dim}")
    return np.concatenate(vals)


def reconstruct_path(samples: Sequence[Sequence[np.ndarray]], sys: ZetaSystem, I, check_tol: float = 1e-9) -> list[np.ndarray]:
    """Apply :func:`reconstruct` along aligned sample lists, one list per unit of ``J``."""
    if len(samples) != sys.J.k:
        raise ValueError(f"expected {sys.J.k} sample lists, got {len(samples)}")
    lengths = {len(s) for s in samples}
    if len(lengths) != 1:
        raise ValueError(f"sample lists have different lengths: {sorted(lengths)}")
    LI = _lmat(I)
    if not kernel_membership(LI, sys, check_tol):
        warnings.warn("target unit fails the kernel condition; formula not guaranteed",
                      KernelMembershipWarning, stacklevel=2)
    op = one_i(LI) @ sys.Zplus
    return [op @ _stack(vals, sys) for vals in zip(*samples)]


@dataclass(frozen=True)
class StemValue:
    a: np.ndarray
    b: np.ndarray
    residual: float

    @property
    def stacked(self) -> np.ndarray:
        return np.concatenate([self.a, self.b])


def stem_solve(values: Sequence[np.ndarray], sys: ZetaSystem) -> StemValue:
    """Stem pair ``F = zeta^+ f`` and its relative consistency residual ``|zeta F - f| / |f|``.

    When ``zeta`` is rank-deficient the minimal-norm (in the ``D_J``
    weighted sense) stem is returned.
    """
    stacked = _stack(values, sys)
    F = sys.Zplus @ stacked
    nf = np.linalg.norm(stacked)
    resid = float(np.linalg.norm(sys.Z @ F - stacked) / (nf if nf > 0 else 1.0))
    half = sys.J.dim
    return StemValue(F[:half], F[half:], resid)


@dataclass(frozen=True)
class StructureReport:
    """Residuals of the structure identities for one ``(I, J)`` pair.

    ``sign_a``/``sign_b`` are the signs ``s`` for which ``L_I (1|L_I) = s (1|L_I) sigma``
    and ``diag(J) zeta = s zeta sigma`` hold (0 if neither does).
    """

    a_plus: float
    a_minus: float
    b_plus: float
    b_minus: float
    orthogonality: float
    intertwining: float
    kernel_identity: float
    in_kernel_set: bool
    sign_a: int
    sign_b: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _sign(plus: float, minus: float, tol: float) -> int:
    if plus <= tol and minus > tol:
        return 1
    if minus <= tol and plus > tol:
        return -1
    return 0


def verify_structure_identities(I, sys: ZetaSystem, tol: float = 1e-12) -> StructureReport:
    LI = _lmat(I)
    n2 = LI.shape[0]
    row = one_i(LI)
    sig = sigma_matrix(n2 // 2)
    a_plus = float(np.max(np.abs(LI @ row - row @ sig)))
    a_minus = float(np.max(np.abs(LI @ row + row @ sig)))
    diagJ = sys.diagJ
    b_plus = float(np.max(np.abs(diagJ @ sys.Z - sys.Z @ sig)))
    b_minus = float(np.max(np.abs(diagJ @ sys.Z + sys.Z @ sig)))
    K = np.linalg.solve(sys.DJ, diagJ @ sys.DJ)
    orth = float(np.max(np.abs(K.T @ K - np.eye(K.shape[0]))))
    R = row @ sys.Zplus
    scale = max(1.0, float(np.max(np.abs(R))))
    inter = float(np.max(np.abs(LI @ R - R @ diagJ)) / scale)
    kid = float(np.max(np.abs(R @ sys.Z - row)))
    return StructureReport(
        a_plus, a_minus, b_plus, b_minus, orth, inter, kid,
        kernel_membership(LI, sys), _sign(a_plus, a_minus, tol), _sign(b_plus, b_minus, tol),
    )
