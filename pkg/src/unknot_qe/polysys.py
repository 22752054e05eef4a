"""The existential real system {P = 0, N != 0} for a Wirtinger presentation.

Every generator ``g_k`` is sent to the symbolic SU(2) matrix

    [[ a_k + i b_k,  c_k + i d_k],
     [-c_k + i d_k,  a_k - i b_k]]

and every relation to the matrix ``E_k`` whose first-row real and imaginary
parts, together with the unit-norm polynomials, are squared and summed into
``P``.  ``N`` sums the squared coordinate differences to generator 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .poly import COMPONENTS, MultiPoly, sum_of_squares, var_name
from .wirtinger import Form, Relation, WirtingerPresentation

__all__ = [
    "PolyMat2",
    "RealSystem",
    "CoefficientStats",
    "su2_template",
    "relation_matrix",
    "rows_upper",
    "rows_lower",
    "unit_norm_poly",
    "build_system",
    "coefficient_stats",
    "system_to_smtlib",
]

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PolyMat2:
    """2x2 complex matrix; each entry is a (real part, imaginary part) pair."""

    entries: tuple  # ((e11, e12), (e21, e22)), each e = (re, im)

    def __matmul__(self, other: PolyMat2) -> PolyMat2:
        rows = []
        for i in range(2):
            row = []
            for j in range(2):
                re = MultiPoly()
                im = MultiPoly()
                for t in range(2):
                    ar, ai = self.entries[i][t]
                    br, bi = other.entries[t][j]
                    re = re + ar * br - ai * bi
                    im = im + ar * bi + ai * br
                row.append((re, im))
            rows.append(tuple(row))
        return PolyMat2(tuple(rows))

    def __sub__(self, other: PolyMat2) -> PolyMat2:
        return PolyMat2(
            tuple(
                tuple(
                    (self.entries[i][j][0] - other.entries[i][j][0],
                     self.entries[i][j][1] - other.entries[i][j][1])
                    for j in range(2)
                )
                for i in range(2)
            )
        )

    def entry(self, i: int, j: int) -> tuple[MultiPoly, MultiPoly]:
        """1-based (row, column) access."""
        return self.entries[i - 1][j - 1]

    def evaluate(self, point) -> list[list[complex]]:
        return [
            [complex(re.evaluate(point), im.evaluate(point)) for re, im in row]
            for row in self.entries
        ]

    def is_zero(self) -> bool:
        return all(re.is_zero() and im.is_zero() for row in self.entries for re, im in row)


def su2_template(k: int, n: int | None = None) -> PolyMat2:
    if k < 1 or (n is not None and k > n):
        raise IndexError(f"generator index {k} out of range")
    a, b, c, d = (MultiPoly.var(k, comp) for comp in COMPONENTS)
    return PolyMat2((((a, b), (c, d)), ((-c, d), (a, -b))))


def relation_matrix(rel: Relation, templates=None) -> PolyMat2:
    """``M_{k+1} M_j - M_j M_k`` (plus) or ``M_k M_j - M_j M_{k+1}`` (minus)."""
    if templates is None:
        templates = {}

    def m(i):
        if i not in templates:
            templates[i] = su2_template(i)
        return templates[i]

    if rel.form is Form.PLUS:
        return m(rel.next) @ m(rel.j) - m(rel.j) @ m(rel.k)
    return m(rel.k) @ m(rel.j) - m(rel.j) @ m(rel.next)


def rows_upper(E: PolyMat2) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """(Re E11, Re E12, Im E11, Im E12)."""
    (r11, i11), (r12, i12) = E.entries[0]
    return (r11, r12, i11, i12)


def rows_lower(E: PolyMat2) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    (r21, i21), (r22, i22) = E.entries[1]
    return (r21, r22, i21, i22)


def unit_norm_poly(k: int) -> MultiPoly:
    a, b, c, d = (MultiPoly.var(k, comp) for comp in COMPONENTS)
    return a * a + b * b + c * c + d * d - 1


@dataclass(frozen=True)
class RealSystem:
    """``P`` must vanish and ``N`` must not.

    ``source`` holds the labelled members of the equality family (nonzero
    ones only) and ``n_source`` the linear differences behind ``N``.
    """

    n: int
    P: MultiPoly
    N: MultiPoly
    source: tuple[tuple[str, MultiPoly], ...] = field(repr=False)
    n_source: tuple[MultiPoly, ...] = field(repr=False)
    presentation: WirtingerPresentation | None = field(default=None, repr=False, compare=False)

    @property
    def num_vars(self) -> int:
        return 4 * self.n

    @property
    def equalities(self) -> tuple[MultiPoly, ...]:
        return (self.P,)

    @property
    def inequalities(self) -> tuple[MultiPoly, ...]:
        return (self.N,)

    def members(self) -> tuple[MultiPoly, ...]:
        return tuple(p for _, p in self.source)

    def to_json(self) -> str:
        data = {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "variables": [var_name(i) for i in range(self.num_vars)],
            "equality": {"degree": self.P.degree(), "terms": self.P.to_dict()},
            "inequality": {"degree": self.N.degree(), "terms": self.N.to_dict()},
            "source": [{"label": lab, "terms": p.to_dict()} for lab, p in self.source],
            "n_source": [p.to_dict() for p in self.n_source],
        }
        if self.presentation is not None:
            data["presentation"] = json.loads(self.presentation.to_json())
        return json.dumps(data, indent=1)

    @classmethod
    def from_json(cls, text: str) -> RealSystem:
        data = json.loads(text)
        pres = None
        if "presentation" in data:
            pres = WirtingerPresentation.from_json(json.dumps(data["presentation"]))
        return cls(
            n=data["n"],
            P=MultiPoly.from_dict(data["equality"]["terms"]),
            N=MultiPoly.from_dict(data["inequality"]["terms"]),
            source=tuple((s["label"], MultiPoly.from_dict(s["terms"])) for s in data["source"]),
            n_source=tuple(MultiPoly.from_dict(t) for t in data["n_source"]),
            presentation=pres,
        )


_ROW_LABELS = ("Re E{k}[1,1]", "Re E{k}[1,2]", "Im E{k}[1,1]", "Im E{k}[1,2]")


def build_system(p: WirtingerPresentation) -> RealSystem:
    if p.n < 1:
        raise ValueError("trivial diagram (n = 0); decide directly")
    templates: dict = {}
    source = []
    for rel in p.relations:
        E = relation_matrix(rel, templates)
        for label, q in zip(_ROW_LABELS, rows_upper(E)):
            if not q.is_zero():
                source.append((label.format(k=rel.k), q))
    for k in range(1, p.n + 1):
        source.append((f"norm {k}", unit_norm_poly(k)))
    diffs = []
    for k in range(2, p.n + 1):
        for comp in COMPONENTS:
            diffs.append(MultiPoly.var(k, comp) - MultiPoly.var(1, comp))
    P = sum_of_squares(q for _, q in source)
    N = sum_of_squares(diffs)
    return RealSystem(p.n, P, N, tuple(source), tuple(diffs), p)


@dataclass(frozen=True)
class CoefficientStats:
    variable_count: int
    equality_count: int
    inequality_count: int
    degree_P: int
    degree_N: int
    member_degree: int
    member_coefficients: frozenset
    P_coefficients: frozenset
    N_coefficients: frozenset

    def as_dict(self) -> dict:
        return {
            "variable_count": self.variable_count,
            "equalities": self.equality_count,
            "inequalities": self.inequality_count,
            "degree_P": self.degree_P,
            "degree_N": self.degree_N,
            "member_degree": self.member_degree,
            "member_coefficients": sorted(self.member_coefficients),
            "P_coefficients": sorted(self.P_coefficients),
            "N_coefficients": sorted(self.N_coefficients),
        }


def coefficient_stats(sys: RealSystem) -> CoefficientStats:
    members = sys.members()
    pre = frozenset().union(*(q.coefficients() for q in members)) if members else frozenset()
    return CoefficientStats(
        variable_count=sys.num_vars,
        equality_count=len(sys.equalities),
        inequality_count=len(sys.inequalities),
        degree_P=sys.P.degree(),
        degree_N=sys.N.degree(),
        member_degree=max((q.degree() for q in members), default=-1),
        member_coefficients=pre,
        P_coefficients=frozenset(sys.P.coefficients()),
        N_coefficients=frozenset(sys.N.coefficients()),
    )


def _smt_int(c: int) -> str:
    return str(c) if c >= 0 else f"(- {-c})"


def _smt_poly(p: MultiPoly) -> str:
    terms = []
    for m, c in p.items():
        factors = [var_name(v) for v, e in m for _ in range(e)]
        if not factors:
            terms.append(_smt_int(c))
        elif c == 1:
            terms.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
        else:
            terms.append(f"(* {_smt_int(c)} {' '.join(factors)})")
    if not terms:
        return "0"
    if len(terms) == 1:
        return terms[0]
    return "(+ " + " ".join(terms) + ")"


def system_to_smtlib(sys: RealSystem) -> str:
    """QF_NRA script asserting ``P = 0`` and ``N != 0``."""
    lines = ["(set-logic QF_NRA)"]
    for i in range(sys.num_vars):
        lines.append(f"(declare-fun {var_name(i)} () Real)")
    lines.append(f"(assert (= {_smt_poly(sys.P)} 0))")
    lines.append(f"(assert (not (= {_smt_poly(sys.N)} 0)))")
    lines.append("(check-sat)")
    lines.append("(exit)")
    return "\n".join(lines) + "\n"
