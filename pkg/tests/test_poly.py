from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from unknot_qe.poly import MultiPoly, Var, sum_of_squares, var_index, var_name, var_of

SYMS = sympy.symbols("a_1 b_1 c_1 d_1 a_2 b_2 c_2 d_2")


def to_sympy(p: MultiPoly):
    expr = sympy.Integer(0)
    for mono, c in p.items():
        term = sympy.Integer(c)
        for v, e in mono:
            term *= SYMS[v] ** e
        expr += term
    return sympy.expand(expr)


monomials = st.lists(st.tuples(st.integers(0, 7), st.integers(1, 3)), max_size=3)
polys = st.dictionaries(monomials.map(lambda m: tuple(sorted(dict(m).items()))),
                        st.integers(-5, 5), max_size=6).map(MultiPoly)


def test_variable_indexing():
    assert var_index(1, "a") == 0 and var_index(2, "d") == 7
    assert var_of(5) == Var(2, "b")
    assert var_name(6) == "c_2" and str(Var(3, "d")) == "d_3"
    with pytest.raises(ValueError):
        Var(0, "a")


def test_zero_coefficients_dropped():
    a = MultiPoly.var(1, "a")
    assert (a - a).is_zero() and len(a - a) == 0
    assert MultiPoly({((0, 1),): 0}).is_zero()


@given(polys, polys)
def test_ring_ops_match_sympy(p, q):
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@given(polys)
def test_degree_diff_and_serialization(p):
    e = to_sympy(p)
    assert p.degree() == (-1 if e == 0 else sympy.Poly(e, *SYMS).total_degree())
    for v in range(8):
        assert to_sympy(p.diff(v)) == sympy.diff(e, SYMS[v])
    assert MultiPoly.from_dict(p.to_dict()) == p


@given(polys, st.lists(st.fractions(max_denominator=20), min_size=8, max_size=8))
def test_exact_evaluation(p, pt):
    want = to_sympy(p).subs(dict(zip(SYMS, [sympy.Rational(x.numerator, x.denominator) for x in pt])))
    got = p.evaluate(pt)
    assert Fraction(got) == Fraction(int(sympy.numer(want)), int(sympy.denom(want)))


def test_float_evaluation_correctly_rounded():
    # fsum accumulation: 1e16 + 1 - 1e16 is exactly 1
    a, b = MultiPoly.var(1, "a"), MultiPoly.var(1, "b")
    p = a * a + b - MultiPoly.const(10**16)
    assert p.evaluate([1e8, 1.0]) == 1.0


def test_missing_variable():
    with pytest.raises(KeyError, match="d_2"):
        MultiPoly.var(2, "d").evaluate({Var(1, "a"): 1})


def test_substitute():
    a1, a2, b2 = MultiPoly.var(1, "a"), MultiPoly.var(2, "a"), MultiPoly.var(2, "b")
    p = a1 * a2 + b2
    assert p.substitute({var_index(2, "a"): var_index(1, "a")}) == a1 * a1 + b2
    assert p.substitute({var_index(2, "b"): None}) == a1 * a2


def test_printing_order():
    a, b = MultiPoly.var(1, "a"), MultiPoly.var(1, "b")
    assert str(a * a - 2 * a * b + 3) == "a_1^2 - 2*a_1*b_1 + 3"
    assert str(MultiPoly()) == "0"


@given(st.lists(polys, max_size=4))
def test_sum_of_squares(ps):
    assert to_sympy(sum_of_squares(ps)) == sympy.expand(sum(to_sympy(p) ** 2 for p in ps))
