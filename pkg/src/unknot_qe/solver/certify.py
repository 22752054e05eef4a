"""Witness certification.

Exact witnesses (rational or cyclotomic coordinates) are checked by exact
evaluation.  Floating-point witnesses get an interval certificate: on the
slice where ``a_1`` is fixed to a rational, a square subsystem is shown to
have a unique zero in a small box by the Krawczyk test, and the remaining
members are handled as described in :class:`ResidualCertificate`.
"""
from __future__ import annotations

import re
from fractions import Fraction

import numpy as np
import scipy.linalg
from mpmath import iv

from ..cyclotomic import CycNumber, is_real
from ..poly import MultiPoly, var_index
from ..polysys import RealSystem
from ..representation import Representation
from .gauge import first_distinct, gauge_normalize
from .types import ExactCertificate, ResidualCertificate, WitnessRejected

__all__ = ["certify_witness", "certify_exact", "certify_interval", "exact_field_name"]

_REL = re.compile(r"E(\d+)\[")


def exact_field_name(values) -> str:
    for x in values:
        if isinstance(x, CycNumber):
            return f"Q(zeta_{x.field.m})"
    return "Q"


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, CycNumber) else x == 0


def certify_exact(sys: RealSystem, rep: Representation, origin=None) -> ExactCertificate:
    """Exact check of ``P = 0`` and ``N != 0``.  ``origin`` is an optional
    Fox coloring the coordinates came from."""
    if rep.exact is None:
        raise ValueError("representation has no exact coordinates")
    if rep.n != sys.n:
        raise WitnessRejected(f"witness has {rep.n} generators, system has {sys.n}")
    vals = rep.flat(exact=True)
    for x in vals:
        if isinstance(x, CycNumber) and not is_real(x):
            raise WitnessRejected("coordinate is not real")
    for label, q in sys.source:
        v = q.evaluate(vals)
        if not _is_zero(v):
            raise WitnessRejected(f"member {label} does not vanish", abs(float(v)))
    if all(_is_zero(d.evaluate(vals)) for d in sys.n_source):
        raise WitnessRejected("all generators coincide (N = 0)", 0.0)
    if origin is not None:
        return ExactCertificate(exact_field_name(vals), origin.p, tuple(origin.colors))
    return ExactCertificate(exact_field_name(vals))


def _relation_of(label: str) -> int | None:
    m = _REL.search(label)
    return int(m.group(1)) if m else None


def _hull(x: float, r: float):
    return iv.mpf([x - r, x + r])


def certify_interval(
    sys: RealSystem,
    rep: Representation,
    radius: float = 1e-6,
    newton_iters: int = 30,
) -> ResidualCertificate:
    n = sys.n
    if rep.n != n:
        raise WitnessRejected(f"witness has {rep.n} generators, system has {n}")
    if n < 2:
        raise WitnessRejected("one generator cannot give N > 0", 0.0)
    rep = gauge_normalize(rep)
    pts = rep.points
    m = first_distinct(pts)
    if m is None:
        raise WitnessRejected("all generators commute with g_1 (abelian)", 0.0)

    a1 = Fraction(pts[0][0])
    pinned = {var_index(1, "c"), var_index(1, "d"), var_index(m, "d"), var_index(1, "a")}
    free = [v for v in range(4 * n) if v not in pinned]

    rows: list[tuple[str, MultiPoly]] = []
    implied: list[str] = []
    for label, q in sys.source:
        k = _relation_of(label)
        if (k is not None and k == n) or (k is None and label != "norm 1"):
            implied.append(label)
        else:
            rows.append((label, q))

    def full_point(y):
        x = np.zeros(4 * n)
        x[free] = y
        x[var_index(1, "a")] = float(a1)
        return x

    # Newton on the slice (least squares; rows outnumber unknowns by one)
    y = np.array(rep.flat())[free]
    jac_polys = [[q.diff(v) for v in free] for _, q in rows]
    for _ in range(newton_iters):
        x = full_point(y)
        r = np.array([q.evaluate(x) for _, q in rows])
        if np.max(np.abs(r)) < 1e-15:
            break
        J = np.array([[d.evaluate(x) for d in row] for row in jac_polys])
        dy, *_ = np.linalg.lstsq(J, -r, rcond=None)
        y = y + dy
    x = full_point(y)
    J = np.array([[d.evaluate(x) for d in row] for row in jac_polys])
    if not np.all(np.isfinite(J)):
        raise WitnessRejected("Newton refinement diverged")

    _, R, piv = scipy.linalg.qr(J.T, pivoting=True)
    dim = len(free)
    diag = np.abs(np.diag(R))
    if len(diag) < dim or diag[dim - 1] < 1e-10 * max(diag[0], 1.0):
        raise WitnessRejected("slice Jacobian is singular at the witness")
    square = sorted(int(i) for i in piv[:dim])
    dropped = sorted(int(i) for i in piv[dim:])

    Js = J[square]
    Y = np.linalg.inv(Js)
    Fx = np.array([rows[i][1].evaluate(x) for i in square])
    # centre one approximate Newton step ahead
    y = y - Y @ Fx
    x = full_point(y)

    def iv_point(box):
        out = [iv.mpf(0)] * (4 * n)
        for idx, v in enumerate(free):
            out[v] = box[idx]
        out[var_index(1, "a")] = iv.mpf(float(a1))
        return out

    centre = [iv.mpf(float(t)) for t in y]
    box = [_hull(float(t), radius) for t in y]
    Xc = iv_point(centre)
    Xb = iv_point(box)
    F = [rows[i][1].evaluate(Xc) for i in square]
    JX = [[jac_polys[i][j].evaluate(Xb) for j in range(dim)] for i in square]
    Yiv = [[iv.mpf(float(Y[i, j])) for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        acc = centre[i]
        for t in range(dim):
            acc = acc - Yiv[i][t] * F[t]
        for j in range(dim):
            c = iv.mpf(1 if i == j else 0)
            for t in range(dim):
                c = c - Yiv[i][t] * JX[t][j]
            acc = acc + c * (box[j] - centre[j])
        if not (acc.a > box[i].a and acc.b < box[i].b):
            raise WitnessRejected("Krawczyk test failed", float(radius))

    # every generator norm stays away from zero, so the determinant chain
    # forces unit norms and relation n follows from the others
    for k in range(1, n + 1):
        s = sum((Xb[var_index(k, c)] ** 2 for c in "abcd"), iv.mpf(0))
        if not s.a > 0:
            raise WitnessRejected(f"norm of g_{k} not bounded away from zero")
    enclosed = []
    for i in dropped:
        label, q = rows[i]
        e = q.evaluate(Xb)
        if not (e.a <= 0 <= e.b):
            raise WitnessRejected(f"member {label} excluded from zero", float(min(abs(e.a), abs(e.b))))
        enclosed.append(label)
    for label in implied:
        q = dict(sys.source)[label]
        e = q.evaluate(Xb)
        if not (e.a <= 0 <= e.b):
            raise WitnessRejected(f"implied member {label} excluded from zero")
    # upper bound of P over the whole box
    p_enc = sum((q.evaluate(Xb) ** 2 for _, q in sys.source), iv.mpf(0))
    bound = float(p_enc.b)
    n_enc = sum((d.evaluate(Xb) ** 2 for d in sys.n_source), iv.mpf(0))
    if not n_enc.a > 0:
        raise WitnessRejected("N not bounded away from zero", 0.0)
    return ResidualCertificate(
        bound=bound,
        radius=radius,
        trace=a1,
        m=m,
        square_rows=tuple(rows[i][0] for i in square),
        implied_rows=tuple(implied),
        enclosed_rows=tuple(enclosed),
        n_lower=float(n_enc.a),
        point=tuple(float(t) for t in x),
    )


def certify_witness(sys: RealSystem, rep: Representation, origin=None,
                    radii=(1e-6, 1e-8, 1e-10)):
    """Exact certificate when exact coordinates are available, interval
    certificate otherwise (the first box radius that passes wins).
    Raises :class:`WitnessRejected`."""
    if rep.exact is not None:
        return certify_exact(sys, rep, origin)
    err = None
    for r in radii:
        try:
            return certify_interval(sys, rep, radius=r)
        except WitnessRejected as exc:
            if exc.reason != "Krawczyk test failed":
                raise
            err = exc
    raise err
