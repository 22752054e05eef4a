"""Conjugation normal form for representations."""
from __future__ import annotations

import math

import numpy as np

from ..representation import Representation, qconj, qmul

__all__ = ["gauge_normalize", "first_distinct", "rotation_to_i"]

GAUGE_TOL = 1e-12


def rotation_to_i(v) -> tuple[float, float, float, float]:
    """Unit quaternion u with ``u v u^-1`` on the positive i axis."""
    v = np.asarray(v, dtype=float)
    r = float(np.linalg.norm(v))
    if r == 0.0:
        return (1.0, 0.0, 0.0, 0.0)
    v = v / r
    pre = None
    if v[0] < 0:
        # half turn about k first; keeps the formula below well conditioned
        pre = (0.0, 0.0, 0.0, 1.0)
        v = np.array([-v[0], -v[1], v[2]])
    cross = np.cross(v, np.array([1.0, 0.0, 0.0]))
    u = np.array([1.0 + v[0], *cross])
    u /= np.linalg.norm(u)
    u = tuple(float(x) for x in u)
    return qmul(u, pre) if pre else u


def first_distinct(points, tol: float = GAUGE_TOL) -> int | None:
    """1-based index of the first generator not commuting with g_1, i.e.
    with a nonzero (c, d) part once g_1 sits on the i axis."""
    for k in range(1, len(points)):
        if math.hypot(points[k][2], points[k][3]) > tol:
            return k + 1
    return None


def _is_normal(points, tol=0.0) -> bool:
    # exact zero tests; signs via float, which is safe once zero is excluded
    _, b1, c1, d1 = points[0]
    if c1 != 0 or d1 != 0 or (b1 != 0 and float(b1) < 0):
        return False
    m = first_distinct([tuple(float(x) for x in p) for p in points], tol)
    if m is None:
        return True
    c, d = points[m - 1][2], points[m - 1][3]
    return d == 0 and (c == 0 or float(c) > 0)


def gauge_normalize(rep: Representation, tol: float = GAUGE_TOL) -> Representation:
    """Conjugate so that ``c_1 = d_1 = 0``, ``b_1 >= 0`` and the first
    generator ``m`` with nonzero (c, d) part has ``d_m = 0``, ``c_m > 0``.

    Representations already in normal form come back unchanged, which
    keeps exact coordinates exact.
    """
    if rep.n == 0:
        return rep
    if rep.exact is not None and _is_normal(rep.exact):
        return rep
    pts = [tuple(p) for p in rep.points]
    u = rotation_to_i(pts[0][1:])
    ui = qconj(u)
    pts = [qmul(qmul(u, p), ui) for p in pts]
    # exact zeros for the pinned coordinates of g_1
    pts[0] = (pts[0][0], math.hypot(*rep.points[0][1:]), 0.0, 0.0)
    m = first_distinct(pts, tol)
    if m is not None:
        c, d = pts[m - 1][2], pts[m - 1][3]
        half = -math.atan2(d, c) / 2.0
        w = (math.cos(half), math.sin(half), 0.0, 0.0)
        wi = qconj(w)
        g1 = pts[0]
        pts = [qmul(qmul(w, p), wi) for p in pts]
        pts[0] = g1  # w commutes with g_1
        a, b, c, _ = pts[m - 1]
        pts[m - 1] = (a, b, math.hypot(c, pts[m - 1][3]), 0.0)
    return Representation(tuple(pts))
