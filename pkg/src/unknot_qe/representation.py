"""Assignments of SU(2) elements to Wirtinger generators.

An element ``(a, b, c, d)`` is the unit quaternion ``a + b i + c j + d k``,
which corresponds to the matrix ``[[a + ib, c + id], [-c + id, a - ib]]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .wirtinger import Form, WirtingerPresentation

__all__ = [
    "Representation",
    "qmul",
    "qconj",
    "to_matrix",
    "relation_residual",
]

NORM_TOL = 1e-12


def qmul(p, q):
    """Quaternion product; works for floats, Fractions and field elements."""
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def qconj(q):
    a, b, c, d = q
    return (a, -b, -c, -d)


def to_matrix(q) -> np.ndarray:
    a, b, c, d = (float(x) for x in q)
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


@dataclass(frozen=True)
class Representation:
    """``points[k - 1]`` is the image of ``g_k``.

    ``exact`` optionally carries the same coordinates as exact numbers
    (Fractions or cyclotomic field elements).
    """

    points: tuple[tuple[float, float, float, float], ...]
    exact: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        pts = tuple(tuple(float(x) for x in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for k, p in enumerate(pts, 1):
            if len(p) != 4:
                raise ValueError(f"generator {k} needs four coordinates")

    @classmethod
    def from_exact(cls, exact: Sequence[Sequence]) -> Representation:
        exact = tuple(tuple(p) for p in exact)
        return cls(tuple(tuple(float(x) for x in p) for p in exact), exact)

    @classmethod
    def from_array(cls, x) -> Representation:
        arr = np.asarray(x, dtype=float).reshape(-1, 4)
        return cls(tuple(tuple(row) for row in arr))

    @classmethod
    def trivial(cls, n: int) -> Representation:
        return cls.from_exact([(Fraction(1), Fraction(0), Fraction(0), Fraction(0))] * n)

    @property
    def n(self) -> int:
        return len(self.points)

    def array(self) -> np.ndarray:
        return np.array(self.points, dtype=float)

    def flat(self, exact: bool = False) -> list:
        """Coordinates in variable-index order (a_1, b_1, c_1, d_1, a_2, ...)."""
        src = self.exact if exact and self.exact is not None else self.points
        return [x for p in src for x in p]

    def max_norm_defect(self) -> float:
        return max((abs(math.sqrt(sum(x * x for x in p)) - 1.0) for p in self.points), default=0.0)

    def is_unit(self, tol: float = NORM_TOL) -> bool:
        return self.max_norm_defect() <= tol

    def conjugate_by(self, u) -> Representation:
        """Simultaneous conjugation ``g -> u g u^-1`` (u a unit quaternion)."""
        ui = qconj(u)
        if self.exact is not None and not isinstance(u[0], float):
            return Representation.from_exact([qmul(qmul(u, p), ui) for p in self.exact])
        return Representation(tuple(qmul(qmul(u, p), ui) for p in self.points))

    def to_json(self) -> list:
        return [[repr(x) for x in p] for p in self.points]


def relation_residual(rep: Representation, pres: WirtingerPresentation) -> float:
    """Largest entry of ``rho(R_k) - I`` over all relations (float matrices)."""
    mats = [to_matrix(p) for p in rep.points]
    eye = np.eye(2)
    worst = 0.0
    for r in pres.relations:
        mj, mk, mn = mats[r.j - 1], mats[r.k - 1], mats[r.next - 1]
        inv = np.linalg.inv
        if r.form is Form.PLUS:
            w = mj @ mk @ inv(mj) @ inv(mn)
        else:
            w = inv(mj) @ mk @ mj @ inv(mn)
        worst = max(worst, float(np.abs(w - eye).max()))
    return worst
