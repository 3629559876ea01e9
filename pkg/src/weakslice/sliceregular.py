"""Weak slice regular polynomials, Cauchy-Riemann checks and the splitting.

A function on the cone is handled slice by slice: on the slice of a unit
``I`` it becomes a map ``(x, y) -> R^{2n}`` with ``x, y in R^d`` (an
*evaluator*), and it is holomorphic there when

    1/2 (d/dx_l + L_I d/dy_l) f = 0    for every variable l.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .algebra import AlgebraSpec, Element, left_mul_matrix
from .linalg import IBasis, i_basis
from .slicecone import SlicePoint

__all__ = [
    "CRReport",
    "ProbeReport",
    "SlicePolynomial",
    "SplitDecomposition",
    "component_evaluator",
    "cr_residual",
    "evaluate",
    "identity_probe",
    "make_grid",
    "recompose",
    "slice_evaluator",
    "split",
]

Evaluator = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class SlicePolynomial:
    """``sum_alpha (x + yI)^alpha a_alpha`` with ``alpha`` a multi-index of length ``d``.

    ``conjugate=True`` evaluates ``(x - yI)^alpha a_alpha`` instead; this
    anti-holomorphic family serves as a negative control.
    """

    d: int
    algebra: AlgebraSpec
    terms: Mapping[tuple, Element] = field(default_factory=dict)
    conjugate: bool = False

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be >= 1")
        clean = {}
        for alpha, coeff in self.terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.d or min(alpha) < 0:
                raise ValueError(f"bad multi-index {alpha} for d={self.d}")
            if not isinstance(coeff, Element):
                coeff = Element(self.algebra, coeff)
            if coeff.algebra is not self.algebra:
                raise ValueError("coefficient from a different algebra")
            clean[alpha] = clean[alpha] + coeff if alpha in clean else coeff
        object.__setattr__(self, "terms", clean)

    @classmethod
    def monomial(cls, algebra: AlgebraSpec, alpha, coeff=None) -> "SlicePolynomial":
        alpha = tuple(alpha)
        coeff = algebra.one() if coeff is None else coeff
        return cls(len(alpha), algebra, {alpha: coeff})

    def _combine(self, other: "SlicePolynomial", sign: float) -> "SlicePolynomial":
        if other.algebra is not self.algebra or other.d != self.d or other.conjugate != self.conjugate:
            raise ValueError("incompatible polynomials")
        terms = dict(self.terms)
        for alpha, c in other.terms.items():
            c = c * sign
            terms[alpha] = terms[alpha] + c if alpha in terms else c
        return SlicePolynomial(self.d, self.algebra, terms, self.conjugate)

    def __add__(self, other):
        return self._combine(other, 1.0)

    def __sub__(self, other):
        return self._combine(other, -1.0)

    def nonzero_terms(self) -> dict:
        return {a: c for a, c in self.terms.items() if np.any(c.coeffs != 0)}


def _powers_apply(P: SlicePolynomial, L: Optional[np.ndarray], x: np.ndarray, y: np.ndarray) -> np.ndarray:
    dim = P.algebra.dim
    out = np.zeros(dim)
    eye = np.eye(dim)
    s = -1.0 if P.conjugate else 1.0
    for alpha, coeff in P.terms.items():
        v = coeff.coeffs.copy()
        for l in range(P.d - 1, -1, -1):
            if alpha[l] == 0:
                continue
            if L is None:
                v = v * x[l] ** alpha[l]
            else:
                op = x[l] * eye + s * y[l] * L
                for _ in range(alpha[l]):
                    v = op @ v
        out += v
    return out


def evaluate(P: SlicePolynomial, p: SlicePoint) -> Element:
    """Value of ``P`` at the cone point ``p``.

    Powers act as iterated left multiplication ``(x_l + y_l L_I)^{alpha_l}``,
    innermost ``l = d``; in alternative algebras this is the plain power.
    """
    if p.d != P.d:
        raise ValueError(f"point has d={p.d}, polynomial d={P.d}")
    if p.unit is not None and p.unit.algebra is not P.algebra:
        raise ValueError("point unit belongs to a different algebra")
    L = None if p.unit is None else left_mul_matrix(p.unit)
    return Element(P.algebra, _powers_apply(P, L, p.x, p.y))


def slice_evaluator(P: SlicePolynomial, unit) -> Evaluator:
    """``(x, y) -> P(x + yI)`` as a coefficient vector, for a fixed unit ``I``."""
    L = left_mul_matrix(unit) if isinstance(unit, Element) else np.asarray(unit, dtype=float)

    def f(x, y):
        return _powers_apply(P, L, np.atleast_1d(np.asarray(x, float)), np.atleast_1d(np.asarray(y, float)))

    return f


@dataclass(frozen=True)
class CRReport:
    residuals: np.ndarray  # (points, d)
    max_residual: float
    max_value: float
    h: float
    tol: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "max_value": self.max_value,
            "per_variable_max": self.residuals.max(axis=0).tolist() if self.residuals.size else [],
            "h": self.h,
            "tol": self.tol,
            "points": int(self.residuals.shape[0]),
            "passed": self.passed,
        }


def _structure(I) -> np.ndarray:
    return left_mul_matrix(I) if isinstance(I, Element) else np.asarray(I, dtype=float)


def cr_residual(f: Evaluator, I, grid: Sequence, h: float = 1e-5, tol: float = 1e-6) -> CRReport:
    """Central-difference Cauchy-Riemann residuals on a grid.

    ``I`` is a slice unit or directly the matrix of the complex structure.
    ``grid`` holds ``(x, y)`` pairs.  Passes iff the largest residual is
    ``<= tol * (1 + max |f|)``.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if len(grid) == 0:
        raise ValueError("empty grid")
    L = _structure(I)
    rows = []
    fmax = 0.0
    for x, y in grid:
        x = np.atleast_1d(np.asarray(x, float))
        y = np.atleast_1d(np.asarray(y, float))
        f0 = np.asarray(f(x, y), float)
        if not np.all(np.isfinite(f0)):
            raise ValueError("non-finite function value")
        fmax = max(fmax, float(np.linalg.norm(f0)))
        res = []
        for l in range(x.shape[0]):
            e = np.zeros_like(x)
            e[l] = h
            dx = (np.asarray(f(x + e, y)) - np.asarray(f(x - e, y))) / (2 * h)
            dy = (np.asarray(f(x, y + e)) - np.asarray(f(x, y - e))) / (2 * h)
            if not (np.all(np.isfinite(dx)) and np.all(np.isfinite(dy))):
                raise ValueError("non-finite function value")
            res.append(float(np.linalg.norm(0.5 * (dx + L @ dy))))
        rows.append(res)
    R = np.array(rows)
    worst = float(R.max())
    return CRReport(R, worst, fmax, h, tol, worst <= tol * (1.0 + fmax))


def make_grid(d: int, size: int = 5, seed: int = 0, x_range=(-0.8, 0.8), y_range=(0.2, 0.9)) -> list:
    """Seeded grid: a ``size x size`` lattice in each ``(x_l, y_l)`` pair.

    The other coordinates take seeded random values; ``y`` stays away from
    the real axis.
    """
    if size < 1:
        raise ValueError("grid size must be >= 1")
    rng = np.random.default_rng(seed)
    xs = np.linspace(*x_range, size)
    ys = np.linspace(*y_range, size)
    pts = []
    for l in range(d):
        for xv in xs:
            for yv in ys:
                x = rng.uniform(*x_range, d)
                y = rng.uniform(*y_range, d)
                x[l], y[l] = xv, yv
                pts.append((x, y))
    return pts


@dataclass(frozen=True)
class SplitDecomposition:
    """Coordinates of ``f_I`` over ``{xi_l, I xi_l}`` as complex functions ``F_l = u_l + i v_l``."""

    unit: object
    basis: IBasis
    grid: list
    components: np.ndarray  # (points, n) complex
    recomposition_residual: float


def split(f: Evaluator, I, grid: Sequence, basis: Optional[IBasis] = None) -> SplitDecomposition:
    L = _structure(I)
    basis = basis if basis is not None else i_basis(L)
    D = basis.d_matrix
    n = D.shape[0] // 2
    comps = np.zeros((len(grid), n), dtype=complex)
    worst = 0.0
    for k, (x, y) in enumerate(grid):
        v = np.asarray(f(np.atleast_1d(x), np.atleast_1d(y)), float)
        c = np.linalg.solve(D, v)
        comps[k] = c[:n] + 1j * c[n:]
        worst = max(worst, float(np.max(np.abs(D @ c - v))))
    return SplitDecomposition(I, basis, list(grid), comps, worst)


def recompose(dec: SplitDecomposition) -> np.ndarray:
    """Rebuild the sampled values ``sum_l (u_l + v_l L_I) xi_l``."""
    D = dec.basis.d_matrix
    return np.array([D @ np.concatenate([c.real, c.imag]) for c in dec.components])


def component_evaluator(f: Evaluator, basis: IBasis, l: int) -> Evaluator:
    """Evaluator of ``F_l`` as the real pair ``(u_l, v_l)``.

    Holomorphy of ``F_l`` is checked with :func:`cr_residual` against the
    structure ``[[0, -1], [1, 0]]``.
    """
    D = basis.d_matrix
    n = D.shape[0] // 2

    def g(x, y):
        c = np.linalg.solve(D, np.asarray(f(x, y), float))
        return np.array([c[l], c[n + l]])

    return g


@dataclass(frozen=True)
class ProbeReport:
    sample_max: float
    sample_equal: bool
    coefficient_equal: bool

    @property
    def agree(self) -> bool:
        return self.sample_equal == self.coefficient_equal


def identity_probe(P: SlicePolynomial, Q: SlicePolynomial, region: Sequence[SlicePoint], tol: float = 1e-12) -> ProbeReport:
    """Compare ``P`` and ``Q`` by samples and by coefficients.

    For polynomials the two verdicts should coincide; a report with
    ``agree == False`` flags a sampling blind spot (e.g. differences below
    ``tol``) rather than a counterexample.
    """
    diff = P - Q
    worst = max((evaluate(diff, p).norm() for p in region), default=0.0)
    coeff_equal = not diff.nonzero_terms()
    return ProbeReport(worst, worst <= tol, coeff_equal)
