"""Finite-dimensional real unital algebras given by structure constants.

An algebra is stored as a ``(dim, dim, dim)`` array ``table`` with
``table[i, j, k]`` the coefficient of ``e_k`` in ``e_i * e_j``.  Builtins:
the Cayley-Dickson tower (complex, quaternion, octonion, sedenion, ...) and
the Clifford algebras ``R_m`` with ``e_i**2 = -1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = [
    "AlgebraSpec",
    "Element",
    "LeftAlternativeReport",
    "builtin_algebra",
    "cayley_dickson",
    "cayley_dickson_tower",
    "clifford_algebra",
    "is_imaginary_unit",
    "is_left_alternative",
    "is_lscs",
    "is_slice_unit",
    "left_alternative_report",
    "left_mul_matrix",
    "multiply",
    "real_numbers",
    "sample_imaginary_unit",
    "sample_slice_unit",
]


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """Real unital algebra with basis ``e_0 = 1, e_1, ..., e_{dim-1}``."""

    name: str
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        table = np.array(self.table, dtype=float)
        if table.ndim != 3 or len(set(table.shape)) != 1:
            raise ValueError(f"table must have shape (dim, dim, dim), got {table.shape}")
        if not np.all(np.isfinite(table)):
            raise ValueError("table entries must be finite")
        dim = table.shape[0]
        # the 1-dimensional real field is admitted only as the seed of the doubling tower
        if dim != 1 and dim % 2:
            raise ValueError(f"dimension must be even, got {dim}")
        eye = np.eye(dim)
        if not (np.array_equal(table[0], eye) and np.array_equal(table[:, 0, :], eye)):
            raise ValueError("e_0 is not a two-sided identity of the table")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @property
    def n(self) -> int:
        """Half the real dimension."""
        return self.dim // 2

    unit_index = 0

    def element(self, coeffs) -> "Element":
        return Element(self, coeffs)

    def one(self) -> "Element":
        return self.basis(0)

    def zero(self) -> "Element":
        return Element(self, np.zeros(self.dim))

    def basis(self, i: int) -> "Element":
        c = np.zeros(self.dim)
        c[i] = 1.0
        return Element(self, c)

    def __repr__(self):
        return f"AlgebraSpec({self.name!r}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Element:
    """Coefficient vector in the basis of ``algebra``."""

    algebra: AlgebraSpec
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).reshape(-1)
        if c.shape[0] != self.algebra.dim:
            raise ValueError(
                f"expected {self.algebra.dim} coefficients, got {c.shape[0]}"
            )
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    def _check(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise ValueError(
                f"algebra mismatch: {self.algebra.name} vs {other.algebra.name}"
            )

    def __add__(self, other):
        self._check(other)
        return Element(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return Element(self.algebra, self.coeffs - other.coeffs)

    def __neg__(self):
        return Element(self.algebra, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return Element(self.algebra, self.coeffs * float(other))

    def __rmul__(self, other):
        return Element(self.algebra, self.coeffs * float(other))

    def __truediv__(self, other):
        return Element(self.algebra, self.coeffs / float(other))

    @property
    def real(self) -> float:
        return float(self.coeffs[0])

    def conj(self) -> "Element":
        """Standard conjugation ``2 Re(a) - a``."""
        c = -self.coeffs.copy()
        c[0] = self.coeffs[0]
        return Element(self.algebra, c)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def allclose(self, other: "Element", atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs), initial=0.0) <= atol)

    def __repr__(self):
        terms = [f"{c:+g}*e{i}" for i, c in enumerate(self.coeffs) if c != 0]
        return f"Element({self.algebra.name}: {' '.join(terms) or '0'})"


def real_numbers() -> AlgebraSpec:
    return AlgebraSpec("reals", np.ones((1, 1, 1)))


def _bilinear(table: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("i,j,ijk->k", a, b, table)


def _conj(a: np.ndarray) -> np.ndarray:
    c = -a
    c[0] = a[0]
    return c


def cayley_dickson(base: AlgebraSpec, name: Optional[str] = None) -> AlgebraSpec:
    """Double ``base`` with the product ``(a, b)(c, d) = (ac - conj(d) b, da + b conj(c))``.

    The pair ``(p, q)`` occupies indices ``0..dim-1`` and ``dim..2*dim-1``.
    Applied four times to the reals this reproduces the standard sedenion
    table (``e1 e2 = e3``, ``e1 e8 = e9``, ``e1 e10 = -e11``).
    """
    m = base.dim
    t = base.table
    N = 2 * m
    out = np.zeros((N, N, N))
    eye = np.eye(m)
    zero = np.zeros(m)
    for I in range(N):
        a, b = (eye[I], zero) if I < m else (zero, eye[I - m])
        for J in range(N):
            c, d = (eye[J], zero) if J < m else (zero, eye[J - m])
            first = _bilinear(t, a, c) - _bilinear(t, _conj(d), b)
            second = _bilinear(t, d, a) + _bilinear(t, b, _conj(c))
            out[I, J, :m] = first
            out[I, J, m:] = second
    return AlgebraSpec(name or f"cd({base.name})", out)


_CD_NAMES = {1: "complex", 2: "quaternion", 3: "octonion", 4: "sedenion"}


def cayley_dickson_tower(k: int) -> AlgebraSpec:
    """The algebra obtained by ``k >= 1`` doublings of the reals."""
    if k < 1:
        raise ValueError("need at least one doubling (the reals are odd-dimensional)")
    alg = real_numbers()
    for step in range(1, k + 1):
        alg = cayley_dickson(alg, name=_CD_NAMES.get(step, f"cd:{step}"))
    return alg


def _blade_product(a: int, b: int) -> tuple[int, int]:
    # blades as bitmasks; sign counts transpositions, each e_i e_i contributes -1
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    sign = -1 if swaps % 2 else 1
    if bin(a & b).count("1") % 2:
        sign = -sign
    return sign, a ^ b


def clifford_algebra(m: int) -> AlgebraSpec:
    """Clifford algebra ``R_m`` with ``e_i e_j + e_j e_i = -2 delta_ij``.

    Basis blades are ordered by grade, then lexicographically by index set,
    so for ``m = 3``: ``1, e1, e2, e3, e12, e13, e23, e123``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    blades = []
    for grade in range(m + 1):
        for idx in itertools.combinations(range(m), grade):
            blades.append(sum(1 << i for i in idx))
    pos = {b: k for k, b in enumerate(blades)}
    dim = len(blades)
    table = np.zeros((dim, dim, dim))
    for i, a in enumerate(blades):
        for j, b in enumerate(blades):
            sign, c = _blade_product(a, b)
            table[i, j, pos[c]] = sign
    return AlgebraSpec(f"clifford:{m}", table)


def builtin_algebra(ident: str) -> AlgebraSpec:
    """Resolve ``quaternion``, ``octonion``, ``sedenion``, ``clifford:m`` or ``cd:k``."""
    ident = ident.strip().lower()
    named = {"complex": 1, "quaternion": 2, "octonion": 3, "sedenion": 4}
    if ident in named:
        return cayley_dickson_tower(named[ident])
    kind, _, arg = ident.partition(":")
    if kind == "clifford" and arg.isdigit():
        return clifford_algebra(int(arg))
    if kind == "cd" and arg.isdigit():
        return cayley_dickson_tower(int(arg))
    raise ValueError(f"unknown builtin algebra {ident!r}")


def multiply(a: Element, b: Element) -> Element:
    a._check(b)
    return Element(a.algebra, _bilinear(a.algebra.table, a.coeffs, b.coeffs))


def left_mul_matrix(a: Element) -> np.ndarray:
    """Matrix of ``x -> a x``; column ``j`` holds the coefficients of ``a e_j``."""
    return np.einsum("i,ijk->kj", a.coeffs, a.algebra.table)


def _right_mul_matrix(a: Element) -> np.ndarray:
    return np.einsum("j,ijk->ki", a.coeffs, a.algebra.table)


def is_imaginary_unit(a: Element, tol: float = 1e-10) -> bool:
    """True iff ``|a*a + 1| <= tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    sq = (a * a).coeffs.copy()
    sq[0] += 1.0
    return bool(np.linalg.norm(sq) <= tol)


def slice_unit_residual(a: Element) -> float:
    L = left_mul_matrix(a)
    return float(np.max(np.abs(L @ L + np.eye(a.algebra.dim))))


def is_slice_unit(a: Element, tol: float = 1e-10) -> bool:
    """True iff ``max|L_a^2 + id| <= tol``, i.e. left multiplication is a complex structure."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    return slice_unit_residual(a) <= tol


@dataclass(frozen=True)
class LeftAlternativeReport:
    max_residual: float
    witness: Optional[tuple[np.ndarray, np.ndarray]]
    holds: bool


def left_alternative_report(
    A: AlgebraSpec, tol: float = 1e-10, seed: int = 0, n_random: int = 100
) -> LeftAlternativeReport:
    """Residuals of ``a(ab) - (aa)b`` on all basis pairs and seeded random pairs.

    The identity is quadratic in ``a``, so basis pairs alone do not settle
    it; the random pairs cover the cross terms.
    """
    T = A.table
    dim = A.dim
    eye = np.eye(dim)
    rng = np.random.default_rng(seed)
    pairs = [(eye[i], eye[j]) for i in range(dim) for j in range(dim)]
    pairs += [(rng.standard_normal(dim), rng.standard_normal(dim)) for _ in range(n_random)]
    worst, witness = 0.0, None
    for a, b in pairs:
        lhs = _bilinear(T, a, _bilinear(T, a, b))
        rhs = _bilinear(T, _bilinear(T, a, a), b)
        r = float(np.max(np.abs(lhs - rhs)))
        if r > worst:
            worst, witness = r, (a, b)
    holds = worst <= tol
    return LeftAlternativeReport(worst, None if holds else witness, holds)


def is_left_alternative(A: AlgebraSpec, tol: float = 1e-10, seed: int = 0) -> bool:
    return left_alternative_report(A, tol, seed).holds


def sample_imaginary_unit(
    A: AlgebraSpec,
    rng: np.random.Generator,
    start: Optional[np.ndarray] = None,
    max_iter: int = 50,
    tol: float = 1e-12,
) -> Optional[Element]:
    """Newton iteration on ``a*a + 1 = 0`` from a random (or given) start.

    Returns ``None`` when the iteration does not reach ``tol``.
    """
    dim = A.dim
    if start is None:
        a = rng.standard_normal(dim)
        a[0] = 0.0
        a /= np.linalg.norm(a)
    else:
        a = np.array(start, dtype=float)
    target = np.zeros(dim)
    target[0] = -1.0
    for _ in range(max_iter):
        e = Element(A, a)
        resid = (e * e).coeffs - target
        if np.linalg.norm(resid) <= tol:
            return e
        jac = left_mul_matrix(e) + _right_mul_matrix(e)
        step = np.linalg.lstsq(jac, resid, rcond=None)[0]
        a = a - step
    e = Element(A, a)
    resid = (e * e).coeffs - target
    return e if np.linalg.norm(resid) <= tol else None


def _refine_slice_unit(
    A: AlgebraSpec, a: np.ndarray, max_iter: int = 50, tol: float = 1e-12
) -> Optional[Element]:
    # Gauss-Newton on the dim*dim residual L_a^2 + id
    basis_L = np.stack([left_mul_matrix(A.basis(i)) for i in range(A.dim)])
    eye = np.eye(A.dim)
    for _ in range(max_iter):
        L = np.tensordot(a, basis_L, axes=1)
        F = L @ L + eye
        if np.max(np.abs(F)) <= tol:
            return Element(A, a)
        jac = np.stack([(Li @ L + L @ Li).ravel() for Li in basis_L], axis=1)
        a = a - np.linalg.lstsq(jac, F.ravel(), rcond=None)[0]
    L = np.tensordot(a, basis_L, axes=1)
    return Element(A, a) if np.max(np.abs(L @ L + eye)) <= tol else None


def sample_slice_unit(
    A: AlgebraSpec, rng: np.random.Generator, max_iter: int = 50, tol: float = 1e-12
) -> Optional[Element]:
    a = rng.standard_normal(A.dim)
    a[0] = 0.0
    a /= np.linalg.norm(a)
    return _refine_slice_unit(A, a, max_iter, tol)


def is_lscs(
    A: AlgebraSpec, trials: int = 20, seed: int = 0, tol: float = 1e-10
) -> tuple[bool, Optional[Element]]:
    """Search for a slice unit; ``(False, None)`` only means none was found.

    Basis elements are tried first, then ``trials`` seeded random unit
    vectors refined by Gauss-Newton on ``a -> L_a^2 + id``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if A.dim % 2:
        return False, None
    for i in range(A.dim):
        e = A.basis(i)
        if is_slice_unit(e, tol):
            return True, e
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        cand = sample_slice_unit(A, rng)
        if cand is not None and is_slice_unit(cand, tol):
            return True, cand
    return False, None
