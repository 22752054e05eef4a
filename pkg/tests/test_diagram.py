import json

import pytest
from hypothesis import given, strategies as st

from unknot_qe import fixtures
from unknot_qe.diagram import (
    Crossing,
    KnotDiagram,
    PDSyntaxError,
    StructureError,
    parse,
    parse_json,
    parse_pd,
    validate,
)

from conftest import TREFOIL, diagram


def knottheory_sign(x):
    """Sign rule for consecutively labelled PD codes (independent oracle):
    the over strand runs l -> j when j - l == 1 or l - j > 1."""
    i, j, k, l = x
    return 1 if (j - l == 1 or l - j > 1) else -1


def test_trefoil_parses():
    d = parse_pd(TREFOIL)
    assert d.n == 3 and d.arc_count == 3
    assert len(set(d.signs)) == 1


def test_trefoil_signs_match_standard_rule():
    d = parse_pd(TREFOIL)
    assert [c.sign for c in d.crossings] == [knottheory_sign(c.arcs) for c in d.crossings]
    assert d.signs == (-1, -1, -1)


def test_empty_diagram():
    d = parse_pd("PD[]")
    assert d.n == 0 and d.signs == ()


def test_truncated_code_names_open_arcs():
    with pytest.raises(StructureError) as exc:
        parse_pd("PD[X(1,4,2,5),X(3,6,4,1)]")
    assert 5 in exc.value.arcs
    assert "5" in str(exc.value)


def test_triple_arc_rejected():
    with pytest.raises(StructureError):
        parse_pd("PD[X(1,1,1,2)]")


def test_two_components_rejected():
    # two disjoint one-crossing twists
    with pytest.raises(StructureError):
        parse_pd("PD[X(1,1,2,2),X(3,3,4,4)]")


@pytest.mark.parametrize("bad", ["PD[X(1,2,3)]", "X(1,2,3,4)", "PD[X(a,b,c,d)]", "PD[X(0,1,1,0)]", "", "PD[X(1,4,2,5)"])
def test_syntax_errors(bad):
    with pytest.raises(PDSyntaxError):
        parse_pd(bad)


def test_r1_twist_is_valid():
    d = parse_pd("PD[X(1,1,2,2)]")
    validate(d)
    assert d.n == 1 and d.over_arc == (1,)


def test_whitespace_insensitive():
    assert parse_pd(" PD[ X( 1, 4,2,5) ,\nX(3,6,4,1),X(5,2,6,3) ] ") == parse_pd(TREFOIL)


@pytest.mark.parametrize("name", list(fixtures.FIXTURES))
def test_print_parse_roundtrip(name):
    d = diagram(name)
    assert parse_pd(d.to_pd()) == d
    assert d.to_pd() == fixtures.load(name).replace(" ", "")
    assert parse_json(d.to_json()) == d
    assert parse(d.to_json()).to_pd() == d.to_pd()


@pytest.mark.parametrize("name", list(fixtures.FIXTURES))
def test_validate_idempotent_and_signs_recomputable(name):
    d = diagram(name)
    validate(d)
    validate(d)
    assert d.recompute_signs() == tuple(c.sign for c in d.crossings)


@pytest.mark.parametrize("name", fixtures.KNOTTED + ("unknot_2", "unknot_4_messy"))
def test_traversal_relabeling(name):
    """Arc k ends (as incoming under strand) at traversal crossing k and the
    outgoing under strand carries arc k mod n + 1."""
    d = diagram(name)
    n = d.n
    for k in range(1, n + 1):
        c = d.crossings[d.order[k - 1]]
        assert d.edge_arc[c.arcs[0]] == k
        assert d.edge_arc[c.arcs[2]] == k % n + 1


@pytest.mark.parametrize("name", fixtures.KNOTTED)
def test_canonical_form_uses_consecutive_labels(name):
    c = diagram(name).canonical()
    assert c.edge_sequence == tuple(range(1, 2 * c.n + 1))
    # the standard sign rule needs consecutive labels; canonical form has them
    assert [x.sign for x in c.crossings] == [knottheory_sign(x.arcs) for x in c.crossings]
    assert c.canonical() == c


@pytest.mark.parametrize("name", list(fixtures.FIXTURES))
def test_reverse_keeps_signs(name):
    d = diagram(name)
    r = d.reversed()
    assert sorted(r.signs) == sorted(d.signs)
    assert r.reversed().to_pd() == d.to_pd()


def test_json_form():
    text = json.dumps({"crossings": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]})
    assert parse_json(text) == parse_pd(TREFOIL)
    with pytest.raises(PDSyntaxError):
        parse_json('{"crossings": [[1, 2, 3]]}')


def test_crossing_strands():
    x = Crossing((1, 4, 2, 5), -1)
    assert x.under == (1, 2) and x.over == (4, 5)
    assert x.reversed().arcs == (2, 5, 1, 4)


@given(st.integers(min_value=0, max_value=5), st.integers(min_value=0, max_value=100))
def test_label_shift_invariance(rot, shift):
    """Relabelling edges by a cyclic shift (plus an offset) keeps the
    diagram's traversal data: signs and over-arc indices."""
    base = diagram("figure_eight")
    m = 2 * base.n
    rot %= m
    perm = {e: (e - 1 + rot) % m + 1 + shift for e in range(1, m + 1)}
    text = "PD[" + ",".join("X(%d,%d,%d,%d)" % tuple(perm[a] for a in c.arcs) for c in base.crossings) + "]"
    d = parse_pd(text)
    assert sorted(d.signs) == sorted(base.signs)
    assert d.n == base.n
