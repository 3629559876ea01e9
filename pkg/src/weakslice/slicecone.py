"""Points and paths of the weak slice-cone, and finite admissible-unit sets.

A point ``x + yI`` of the cone is stored intrinsically as the triple
``(x, y, I)``.  Since ``x + yI = x + (-y)(-I)`` the representation is made
unique by orienting ``I`` into a fixed half ``C+`` of the unit set: the
units whose first nonzero coefficient is positive.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .algebra import Element, is_slice_unit

__all__ = [
    "Box",
    "DomainSpec",
    "DomainVariant",
    "SlicePath",
    "SlicePoint",
    "admissible_units",
    "canonical_point",
    "embed_path",
    "path_prefix",
    "points_equal",
    "psi_embed",
]

_ZERO_TOL = 1e-12


def _vec(v, d: Optional[int] = None) -> np.ndarray:
    a = np.atleast_1d(np.asarray(v, dtype=float)).copy()
    if a.ndim != 1 or (d is not None and a.shape[0] != d):
        raise ValueError(f"expected a vector of length {d}, got shape {a.shape}")
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SlicePoint:
    x: np.ndarray
    y: np.ndarray
    unit: Optional[Element] = None

    def __post_init__(self):
        x = _vec(self.x)
        y = _vec(self.y, x.shape[0])
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        is_real = not np.any(np.abs(y) > _ZERO_TOL)
        if self.unit is None and not is_real:
            raise ValueError("a non-real point needs a unit")

    @property
    def d(self) -> int:
        return self.x.shape[0]

    @property
    def is_real(self) -> bool:
        return not np.any(np.abs(self.y) > _ZERO_TOL)


def _in_positive_half(unit: Element) -> bool:
    nz = np.flatnonzero(np.abs(unit.coeffs) > _ZERO_TOL)
    return nz.size == 0 or unit.coeffs[nz[0]] > 0


def canonical_point(p: SlicePoint) -> SlicePoint:
    if p.is_real:
        return SlicePoint(p.x, np.zeros(p.d), None)
    if _in_positive_half(p.unit):
        return p
    return SlicePoint(p.x, -p.y, -p.unit)


def points_equal(p: SlicePoint, q: SlicePoint, tol: float = 1e-12) -> bool:
    """Equality of canonical forms, componentwise within ``tol``."""
    p, q = canonical_point(p), canonical_point(q)
    if p.d != q.d:
        return False
    if np.max(np.abs(p.x - q.x)) > tol or np.max(np.abs(p.y - q.y)) > tol:
        return False
    if p.unit is None or q.unit is None:
        return p.unit is None and q.unit is None
    return p.unit.algebra is q.unit.algebra and bool(
        np.max(np.abs(p.unit.coeffs - q.unit.coeffs)) <= tol
    )


def psi_embed(x, y, unit: Element, tol: float = 1e-10) -> SlicePoint:
    """Send ``(x, y)`` in ``R^d x R^d`` to the canonical point ``x + yI``."""
    if not is_slice_unit(unit, tol):
        raise ValueError("unit is not a slice unit")
    return canonical_point(SlicePoint(x, y, unit))


@dataclass(frozen=True, eq=False)
class SlicePath:
    """Piecewise-linear path ``t -> (x(t), y(t))`` in ``C^d`` starting on ``R^d``."""

    t: np.ndarray
    x: np.ndarray  # (m, d)
    y: np.ndarray  # (m, d)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).reshape(-1)
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        if y.ndim == 1:
            y = y[:, None]
        if x.shape != y.shape or x.shape[0] != t.shape[0]:
            raise ValueError("t, x, y must agree in sample count and x, y in dimension")
        if t.shape[0] < 1 or t[0] != 0.0 or t[-1] != 1.0:
            raise ValueError("samples must start at t=0 and end at t=1")
        if t.shape[0] > 1 and np.any(np.diff(t) <= 0):
            raise ValueError("t must be strictly increasing")
        if np.any(y[0] != 0.0):
            raise ValueError("a path must start on R^d (y(0) = 0)")
        for a in (t, x, y):
            a.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def d(self) -> int:
        return self.x.shape[1]

    def __len__(self):
        return self.t.shape[0]

    def at(self, s: float) -> tuple[np.ndarray, np.ndarray]:
        """Linear interpolation at parameter ``s`` in ``[0, 1]``."""
        if len(self) == 1:
            return self.x[0].copy(), self.y[0].copy()
        x = np.array([np.interp(s, self.t, self.x[:, l]) for l in range(self.d)])
        y = np.array([np.interp(s, self.t, self.y[:, l]) for l in range(self.d)])
        return x, y

    @classmethod
    def semicircle(cls, samples: int = 64, radius: float = 1.0, center: float = 0.0) -> "SlicePath":
        """``t -> center + radius * exp(i pi (1 - t))`` from the real axis over the upper half plane."""
        t = np.linspace(0.0, 1.0, samples)
        ang = np.pi * (1.0 - t)
        x = center + radius * np.cos(ang)
        y = radius * np.sin(ang)
        y[0] = 0.0
        return cls(t, x, y)


def path_prefix(path: SlicePath, t: float) -> SlicePath:
    """The path ``s -> path(t s)``.

    Keeps the original samples below ``t`` (rescaled) and adds the
    interpolated cut point at ``s = 1``; ``t = 0`` gives the constant path on
    the original grid.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    if t == 0.0:
        m = len(path)
        return SlicePath(path.t, np.tile(path.x[0], (m, 1)), np.tile(path.y[0], (m, 1)))
    if t == 1.0:
        return path
    keep = path.t < t
    xe, ye = path.at(t)
    return SlicePath(
        np.append(path.t[keep] / t, 1.0),
        np.vstack([path.x[keep], xe]),
        np.vstack([path.y[keep], ye]),
    )


def embed_path(path: SlicePath, unit: Element) -> list[SlicePoint]:
    if not is_slice_unit(unit):
        raise ValueError("unit is not a slice unit")
    return [canonical_point(SlicePoint(x, y, unit)) for x, y in zip(path.x, path.y)]


@dataclass(frozen=True)
class Box:
    """Axis-aligned closed box over ``(x, |y|)``."""

    x_lo: tuple
    x_hi: tuple
    y_lo: tuple
    y_hi: tuple

    def __post_init__(self):
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, tuple(float(v) for v in np.atleast_1d(getattr(self, name))))
        lo = np.array(self.x_lo + self.y_lo)
        hi = np.array(self.x_hi + self.y_hi)
        if lo.shape != hi.shape or len(self.x_lo) != len(self.y_lo):
            raise ValueError("box bounds have inconsistent lengths")
        if np.any(hi <= lo):
            raise ValueError("box must have positive volume")
        if min(self.y_lo) < 0:
            raise ValueError("|y| bounds must be non-negative")

    def contains(self, x, y_abs) -> bool:
        x = np.asarray(x)
        y_abs = np.asarray(y_abs)
        return bool(
            np.all(x >= self.x_lo) and np.all(x <= self.x_hi)
            and np.all(y_abs >= self.y_lo) and np.all(y_abs <= self.y_hi)
        )


class DomainVariant(enum.Enum):
    WHOLE_CONE = "WHOLE_CONE"
    CIRCULARIZED = "CIRCULARIZED"
    SLICEWISE = "SLICEWISE"


@dataclass(frozen=True, eq=False)
class DomainSpec:
    """A subset of the cone.

    ``CIRCULARIZED`` uses one box list for every slice; ``SLICEWISE`` pairs
    units with their own box lists (a unit also governs its negative, and
    unlisted units see an empty slice).
    """

    variant: DomainVariant
    boxes: tuple = ()
    slicewise: tuple = field(default=())  # ((Element, (Box, ...)), ...)

    def _boxes_for(self, unit: Element) -> Sequence[Box]:
        for u, boxes in self.slicewise:
            if u.algebra is not unit.algebra:
                continue
            if np.max(np.abs(u.coeffs - unit.coeffs)) <= _ZERO_TOL or np.max(
                np.abs(u.coeffs + unit.coeffs)
            ) <= _ZERO_TOL:
                return boxes
        return ()

    def contains(self, p: SlicePoint, unit: Optional[Element] = None) -> bool:
        """Membership of ``p``; ``unit`` names the slice a real point is viewed on."""
        if self.variant is DomainVariant.WHOLE_CONE:
            return True
        y_abs = np.abs(p.y)
        if self.variant is DomainVariant.CIRCULARIZED:
            return any(b.contains(p.x, y_abs) for b in self.boxes)
        u = p.unit if p.unit is not None else unit
        if u is None:
            return any(b.contains(p.x, y_abs) for _, boxes in self.slicewise for b in boxes)
        return any(b.contains(p.x, y_abs) for b in self._boxes_for(u))


def admissible_units(path: SlicePath, domain: DomainSpec, candidates: Sequence[Element]) -> list[Element]:
    """Candidates ``I`` whose embedded path stays inside ``domain``."""
    out = []
    for unit in candidates:
        pts = embed_path(path, unit)
        if all(domain.contains(p, unit) for p in pts):
            out.append(unit)
    return out
