import numpy as np
import pytest
import sympy

from unknot_qe import fixtures
from unknot_qe.representation import Representation, relation_residual, to_matrix
from unknot_qe.wirtinger import (
    Form,
    Relation,
    WirtingerPresentation,
    build_presentation,
    presentation_to_text,
)

from conftest import diagram, presentation

t = sympy.symbols("t")

# Alexander polynomials from the standard knot tables, up to units.
ALEXANDER = {
    "trefoil": t**2 - t + 1,
    "figure_eight": t**2 - 3 * t + 1,
    "5_1": t**4 - t**3 + t**2 - t + 1,
    "5_2": 2 * t**2 - 3 * t + 2,
    "6_1": 2 * t**2 - 5 * t + 2,
    "trefoil_r1": t**2 - t + 1,
    "unknot_1": sympy.Integer(1),
    "unknot_2": sympy.Integer(1),
    "unknot_4_messy": sympy.Integer(1),
}


def fox_alexander(pres):
    """Alexander polynomial from the Fox Jacobian of the relators,
    abelianised g_i -> t (independent of the solver code)."""
    n = pres.n
    M = sympy.zeros(n, n)
    for row, rel in enumerate(pres.relations):
        s = 0
        for g, e in rel.word():
            M[row, g - 1] += t**s if e == 1 else -(t ** (s - 1))
            s += e
    if n == 1:
        return sympy.Integer(1)
    return sympy.expand(M[: n - 1, : n - 1].det())


def normalize(p):
    num, den = sympy.fraction(sympy.together(sympy.expand(p)))
    p = sympy.Poly(sympy.expand(num), t)  # den is a power of t, a unit
    low = min(m[0] for m in p.monoms())
    q = sympy.Poly(sympy.expand(p.as_expr() / t**low), t)
    if q.eval(0) < 0:
        q = -q
    return q


@pytest.mark.parametrize("name", list(ALEXANDER))
def test_fox_alexander_matches_tables(name):
    got = normalize(fox_alexander(presentation(name)))
    assert got == normalize(ALEXANDER[name])


def test_trefoil_relations():
    p = presentation("trefoil")
    assert p.n == 3
    assert {r.k: r.j for r in p.relations} == {1: 3, 2: 1, 3: 2}
    assert len({r.form for r in p.relations}) == 1


def test_empty_presentation():
    p = build_presentation(diagram("unknot_0"))
    assert p.n == 0 and p.relations == ()
    assert presentation_to_text(p) == "⟨ | ⟩"


def test_one_crossing_twist():
    p = presentation("unknot_1")
    (r,) = p.relations
    assert (r.k, r.j, r.next) == (1, 1, 1)
    assert presentation_to_text(p) == "⟨g1 | g1 g1 g1⁻¹ g1⁻¹⟩"


def test_text_form_trefoil():
    text = presentation_to_text(presentation("trefoil"))
    assert text == "⟨g1,g2,g3 | g3⁻¹ g1 g3 g2⁻¹, g1⁻¹ g2 g1 g3⁻¹, g2⁻¹ g3 g2 g1⁻¹⟩"
    # the positive form of the same j-assignment
    plus = WirtingerPresentation(3, tuple(Relation(r.k, r.j, Form.PLUS, 3) for r in presentation("trefoil").relations))
    assert presentation_to_text(plus) == "⟨g1,g2,g3 | g3 g1 g3⁻¹ g2⁻¹, g1 g2 g1⁻¹ g3⁻¹, g2 g3 g2⁻¹ g1⁻¹⟩"


@pytest.mark.parametrize("name", [k for k in fixtures.FIXTURES if k != "unknot_0"])
def test_structure(name):
    p = presentation(name)
    d = diagram(name)
    assert len(p.relations) == p.n == d.n
    assert sorted(r.k for r in p.relations) == list(range(1, p.n + 1))
    for r, s in zip(p.relations, d.signs):
        assert 1 <= r.j <= p.n
        assert r.form is (Form.PLUS if s > 0 else Form.MINUS)
    assert WirtingerPresentation.from_json(p.to_json()) == p


@pytest.mark.parametrize("name", [k for k in fixtures.FIXTURES if k != "unknot_0"])
def test_abelian_assignment_satisfies_relations(name):
    p = presentation(name)
    rng = np.random.default_rng(7)
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    rep = Representation(tuple(tuple(q) for _ in range(p.n)))
    assert relation_residual(rep, p) < 1e-12
    assert relation_residual(Representation.trivial(p.n), p) == 0


def test_relation_words_are_conjugations():
    """Each relator says g_{k+1} = g_j^{+-1} g_k g_j^{-+1}; check with random
    matrices that solving for g_{k+1} zeroes the relator."""
    rng = np.random.default_rng(3)
    for form in Form:
        r = Relation(k=1, j=3, form=form, n=3)
        A, B = (to_matrix(v / np.linalg.norm(v)) for v in rng.normal(size=(2, 4)))
        inv = np.linalg.inv
        C = A @ B @ inv(A) if form is Form.PLUS else inv(A) @ B @ A
        mats = {1: B, 3: A, 2: C}
        w = np.eye(2)
        for g, e in r.word():
            w = w @ (mats[g] if e == 1 else inv(mats[g]))
        assert np.allclose(w, np.eye(2))


def test_reversed_orientation_same_alexander():
    for name in ("trefoil", "figure_eight", "5_2"):
        rev = build_presentation(diagram(name).reversed())
        assert normalize(fox_alexander(rev)) == normalize(ALEXANDER[name])
