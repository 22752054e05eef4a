"""Witness search and certification."""
from fractions import Fraction

import numpy as np
import pytest

from unknot_qe.oracle import coloring_to_rep, find_coloring
from unknot_qe.representation import Representation, relation_residual
from unknot_qe.solver import (
    ExactCertificate,
    ResidualCertificate,
    SearchConfig,
    WitnessRejected,
    certify_exact,
    certify_interval,
    certify_witness,
    search_witness,
)
from unknot_qe.solver.gauge import _is_normal

from conftest import presentation, system


def member_p(sys, x):
    """P as a sum of squares of its members; the expanded form cancels badly in floats."""
    return sum(q.evaluate(list(x)) ** 2 for q in sys.members())


@pytest.fixture(scope="module")
def fig8_witness():
    out = search_witness(system("figure_eight"), SearchConfig(restarts=32, seed=0))
    assert out.witness is not None and out.source == "random"
    return out.witness


def test_seeded_search_accepts_trefoil_coloring():
    rep = coloring_to_rep(find_coloring(presentation("trefoil"), 3))
    out = search_witness(system("trefoil"), seeds=[rep])
    assert out.source == "seed" and out.attempts == 1
    assert out.best_p <= 1e-20


def test_single_generator_has_no_witness():
    out = search_witness(system("unknot_1"), SearchConfig(restarts=8))
    assert out.witness is None


@pytest.mark.parametrize("name", ["unknot_2"])
def test_unknot_search_fails(name):
    out = search_witness(system(name), SearchConfig(restarts=16, min_n=1e-4))
    assert out.witness is None and out.attempts == 16


def test_random_search_figure_eight(fig8_witness):
    sys = system("figure_eight")
    x = np.array(fig8_witness.flat())
    assert member_p(sys, x) <= 1e-20
    assert abs(sys.P.evaluate(list(x))) < 1e-12
    assert sys.N.evaluate(list(x)) >= 1e-6
    assert relation_residual(fig8_witness, presentation("figure_eight")) < 1e-9
    assert fig8_witness.is_unit(1e-12)


def test_witness_traces_equal(fig8_witness):
    # Wirtinger generators are conjugate, so their images share a trace
    a = fig8_witness.array()[:, 0]
    assert np.ptp(a) < 1e-9


def test_search_is_seed_deterministic():
    sys = system("trefoil")
    one = search_witness(sys, SearchConfig(restarts=8, seed=3))
    two = search_witness(sys, SearchConfig(restarts=8, seed=3, threads=4))
    assert one.witness == two.witness and one.attempts == two.attempts


def test_interval_certificate(fig8_witness):
    cert = certify_witness(system("figure_eight"), fig8_witness)
    assert isinstance(cert, ResidualCertificate)
    assert cert.bound < 1e-9 and cert.n_lower > 0
    assert cert.radius in (1e-6, 1e-8, 1e-10)
    assert len(cert.square_rows) == 4 * 4 - 4
    assert isinstance(cert.trace, Fraction)
    x = list(cert.point)
    assert member_p(system("figure_eight"), x) < 1e-20


def test_exact_certificate_trefoil():
    col = find_coloring(presentation("trefoil"), 3)
    cert = certify_witness(system("trefoil"), coloring_to_rep(col), col)
    assert isinstance(cert, ExactCertificate)
    assert cert.field == "Q(zeta_12)" and cert.p == 3 and cert.coloring == (0, 1, 2)


def test_trivial_representation_rejected():
    sys = system("trefoil")
    with pytest.raises(WitnessRejected, match="N = 0"):
        certify_exact(sys, Representation.trivial(3))
    with pytest.raises(WitnessRejected, match="abelian"):
        certify_interval(sys, Representation(((1.0, 0.0, 0.0, 0.0),) * 3))


def test_perturbed_exact_witness_rejected():
    rep = coloring_to_rep(find_coloring(presentation("trefoil"), 3))
    pts = [list(p) for p in rep.exact]
    pts[1][0] = pts[1][0] + Fraction(1, 1000)
    with pytest.raises(WitnessRejected, match="does not vanish"):
        certify_exact(system("trefoil"), Representation.from_exact(pts))


def test_perturbed_float_witness_recovers(fig8_witness):
    rng = np.random.default_rng(0)
    x = fig8_witness.array() + 1e-3 * rng.normal(size=(4, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    cert = certify_interval(system("figure_eight"), Representation.from_array(x))
    assert np.abs(np.array(cert.point) - np.array(fig8_witness.flat())).max() < 1e-2


def test_far_point_rejected():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(4, 4))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    with pytest.raises(WitnessRejected):
        certify_witness(system("unknot_4_messy"), Representation.from_array(x))


def test_wrong_size_rejected(fig8_witness):
    with pytest.raises(WitnessRejected):
        certify_interval(system("trefoil"), fig8_witness)


def test_certified_witness_is_gauge_normal(fig8_witness):
    assert _is_normal(fig8_witness.points, 1e-12)
