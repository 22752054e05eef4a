import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from unknot_qe import fixtures
from unknot_qe.cyclotomic import CyclotomicField
from unknot_qe.oracle import Coloring, coloring_to_rep
from unknot_qe.poly import MultiPoly
from unknot_qe.polysys import (
    RealSystem,
    build_system,
    coefficient_stats,
    relation_matrix,
    rows_lower,
    rows_upper,
    su2_template,
    system_to_smtlib,
    unit_norm_poly,
)
from unknot_qe.wirtinger import Form, Relation, build_presentation

from conftest import NONTRIVIAL, presentation, system
from sym_oracle import sym_system

# Post-squaring coefficient sets, computed with the sympy construction in
# sym_oracle.py and frozen here.
P_COEFFS = {
    "trefoil": {-4, -2, 1, 2, 3, 4},
    "figure_eight": {-4, -2, 1, 2, 4},
}
N_COEFFS = {"trefoil": {-2, 1, 2}, "figure_eight": {-2, 1, 3}}


def to_sym(p: MultiPoly, S):
    flat = [s for k in sorted(S) for s in S[k]]
    expr = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Integer(c)
        for v, e in mono:
            term *= flat[v] ** e
        expr += term
    return sympy.expand(expr)


def test_template_shape():
    M = su2_template(1)
    (r11, i11), (r12, i12) = M.entries[0]
    (r21, i21), (r22, i22) = M.entries[1]
    assert r21 == -r12 and i21 == i12
    assert r22 == r11 and i22 == -i11
    assert str(r21) == "-c_1" and str(i12) == "d_1"
    assert M.evaluate([1, 0, 0, 0]) == [[1, 0], [0, 1]]
    assert M.evaluate([0, 1, 0, 0]) == [[1j, 0], [0, -1j]]
    with pytest.raises(IndexError):
        su2_template(0)
    with pytest.raises(IndexError):
        su2_template(4, n=3)


def test_relation_matrix_identity_point():
    E = relation_matrix(Relation(1, 2, Form.PLUS, 3))
    assert E.evaluate([1, 0, 0, 0] * 3) == [[0, 0], [0, 0]]


def test_relation_matrix_trefoil_witness():
    pres = presentation("trefoil")
    rep = coloring_to_rep(Coloring(3, (0, 1, 2)), pres)
    vals = rep.flat(exact=True)
    for rel in pres.relations:
        E = relation_matrix(rel)
        for row in E.entries:
            for re, im in row:
                assert re.evaluate(vals).is_zero() and im.evaluate(vals).is_zero()
    # the witness coordinates: g_2 = (0, -1/2, sqrt3/2, 0), g_3 = (0, -1/2, -sqrt3/2, 0)
    s = math.sqrt(3) / 2
    assert np.allclose(rep.array(), [[0, 1, 0, 0], [0, -0.5, s, 0], [0, -0.5, -s, 0]])


def test_relation_matrix_detects_sign_flip():
    E = relation_matrix(Relation(1, 3, Form.PLUS, 3))
    pt = [0, 1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0]  # g_2 = -g_1
    assert not all(abs(x) < 1e-12 for row in E.evaluate(pt) for x in row)


@pytest.mark.parametrize("name", NONTRIVIAL)
def test_member_rows(name):
    pres = presentation(name)
    for rel in pres.relations:
        E = relation_matrix(rel)
        ups = rows_upper(E)
        allowed = {rel.j, rel.k, rel.next}
        reducible = rel.j in (rel.k, rel.next)
        for q in ups:
            if not reducible:
                assert q.coefficients() <= {-1, 1}
            assert q.is_zero() or q.degree() == 2
            assert {v // 4 + 1 for v in q.variables()} <= allowed
        # the second row repeats the first up to sign
        up = {q for q in ups if not q.is_zero()} | {-q for q in ups if not q.is_zero()}
        low = {q for q in rows_lower(E) if not q.is_zero()}
        assert low <= up and len(low) == len({q for q in ups if not q.is_zero()})


def test_reducible_crossing_coefficients():
    """With j in {k, k+1} a generator meets itself and like terms merge
    (measured, not assumed): coefficients +-2 appear before squaring."""
    E = relation_matrix(Relation(1, 2, Form.PLUS, 2))
    coeffs = set().union(*(q.coefficients() for q in rows_upper(E)))
    assert coeffs == {-1, 1, 2}
    assert any(q.to_dict().get("a_2*c_2") == 2 for q in rows_upper(E))


def test_zero_matrix_rows():
    E = relation_matrix(Relation(1, 1, Form.PLUS, 1))
    assert all(q.is_zero() for q in rows_upper(E))


def test_unit_norm_poly():
    q = unit_norm_poly(1)
    assert q.evaluate([1, 0, 0, 0]) == 0
    assert q.evaluate([1, 1, 0, 0]) == 1
    h = Fraction(1, 2)
    assert q.evaluate([h, h, h, h]) == 0
    assert q.evaluate([0, 1, 0, 0]) == 0


@pytest.mark.parametrize("name", ["trefoil", "figure_eight", "unknot_2", "5_2"])
def test_system_matches_sympy_construction(name):
    sys_ = system(name)
    S, members, P, N = sym_system(presentation(name))
    assert sorted(map(str, (to_sym(q, S) for q in sys_.members()))) == sorted(map(str, members))
    assert to_sym(sys_.P, S) == P
    assert to_sym(sys_.N, S) == N


@pytest.mark.parametrize("name", ["trefoil", "figure_eight"])
def test_post_squaring_coefficients(name):
    stats = coefficient_stats(system(name))
    assert set(stats.P_coefficients) == P_COEFFS[name]
    assert set(stats.N_coefficients) == N_COEFFS[name]
    assert set(stats.member_coefficients) == {-1, 1}


def test_trefoil_stats():
    s = coefficient_stats(system("trefoil"))
    assert s.variable_count == 12
    assert (s.equality_count, s.inequality_count) == (1, 1)
    assert (s.degree_P, s.degree_N, s.member_degree) == (4, 2, 2)
    d = s.as_dict()
    assert d["P_coefficients"] == sorted(P_COEFFS["trefoil"])


def test_trefoil_witness_values():
    sys_ = system("trefoil")
    rep = coloring_to_rep(Coloring(3, (0, 1, 2)), presentation("trefoil"))
    vals = rep.flat(exact=True)
    assert sys_.P.evaluate(vals).is_zero()
    # N at this witness: each of g_2, g_3 differs from g_1 by squared distance 3
    assert sys_.N.evaluate(vals) == CyclotomicField(12).from_rational(6)
    assert abs(sys_.P.evaluate(rep.flat())) < 1e-12


def test_trivial_degenerate_rejected():
    with pytest.raises(ValueError, match="n = 0"):
        build_system(build_presentation(fixtures.load_diagram("unknot_0")))


@pytest.mark.parametrize("name", NONTRIVIAL)
def test_json_roundtrip(name):
    sys_ = system(name)
    back = RealSystem.from_json(sys_.to_json())
    assert back == sys_
    assert back.to_json() == sys_.to_json()


def test_smtlib_export():
    text = system_to_smtlib(system("trefoil"))
    assert text.startswith("(set-logic QF_NRA)")
    assert text.count("(declare-fun") == 12
    assert "(assert (not (= " in text and text.rstrip().endswith("(exit)")
    assert text == system_to_smtlib(system("trefoil"))


@pytest.mark.parametrize("name", ["trefoil", "figure_eight"])
def test_relation_soundness_at_witness(name):
    """A zero of the members gives matrices satisfying the group relations."""
    from unknot_qe.oracle import find_coloring
    from unknot_qe.representation import relation_residual

    pres = presentation(name)
    col = next(c for c in (find_coloring(pres, p) for p in (3, 5, 7)) if c)
    rep = coloring_to_rep(col, pres)
    assert relation_residual(rep, pres) < 1e-12
