"""Weight-space polynomial laboratory: the p-series, the Virasoro
consistency constraint, and the coefficient claims about f2 and g."""

from fractions import Fraction

from winfty.scalars import falling, rising
from winfty.weightlab import (build_f_polynomials, build_p_series,
                              coefficient_claims, consistency_polynomial,
                              p_series_report, verify_yk_relations,
                              virasoro_consistency, weightlab_ring)
from winfty.intermediate import make_module, normalize_ddt_basis
from winfty.scalars import Ring
from winfty.weyl import Weyl

RING = weightlab_ring()
KBAR = RING.sym("kbar")
P1 = RING.sym("p1")
P2 = RING.sym("p2")


def test_p_anchors():
    ps = build_p_series(RING)
    assert ps.pjk(0) == KBAR
    assert ps.pjk(1) == rising(KBAR, 2) + P1
    assert ps.pjk(3) == (rising(KBAR, 4) + 6 * rising(KBAR, 2) * P1
                         + 4 * KBAR * P2 + ps.constants[3])


def test_p_collapse_at_zero_constants():
    ps = build_p_series(RING)
    zero = {"p1": Fraction(0), "p2": Fraction(0)}
    for j in range(-1, 6):
        got = ps.pjk(j).substitute(zero)
        assert got == rising(KBAR, j + 1)


def test_transcribed_equals_rederived():
    ps = build_p_series(RING)
    assert set(ps.discrepancies) == {3, 4, 5}
    assert all(d.is_zero() for d in ps.discrepancies.values())


def test_virasoro_consistency_report():
    rep = virasoro_consistency()
    assert rep.passed
    assert rep.details["factor"] == "-8"
    assert rep.details["constraint"] == "4*p1^3 + 8*p1^2 - 6*p1*p2 + p2^2"
    assert rep.details["spot(0,0)"] == "0"
    assert rep.details["spot(-2,0)"] == "0"


def test_consistency_polynomial_spot_roots():
    c = consistency_polynomial(RING)
    assert c.substitute({"p1": Fraction(0), "p2": Fraction(0)}).is_zero()
    assert c.substitute({"p1": Fraction(-2), "p2": Fraction(0)}).is_zero()


def test_f1_at_zero_constants_is_rising_factor():
    fp = build_f_polynomials()
    zero = {"p1": 0, "p2": 0, "pp1": 0, "pp2": 0}
    i = RING.sym("i")
    # the relation collapses to [i+1]_4 (q_i - q_(i-2)) = 0: the coefficient
    # multiplying q_i is then -[i+1]_4 (the q_(i-2) side carries +[i+1]_4)
    assert fp.f1.substitute(zero) == -falling(i + 1, 4)


def test_coefficient_claims():
    rep = coefficient_claims()
    assert rep.passed
    assert rep.details["f2_i4"] == "p1 - pp1"
    assert rep.details["g_i12_at_pp1=p1"] == "6*p1"
    # recorded observation: f2 does not vanish identically when the primed
    # constants equal the unprimed ones
    assert rep.details["f2_at_equal_constants_zero"] is False


def test_p_series_report_passes():
    assert p_series_report().passed


def test_yk_relations_on_module_data():
    ring = Ring(("alpha",))
    weyl = Weyl(1, ring=ring, subalgebra="w1")
    for kind in ("A", "B"):
        for alpha in (Fraction(1, 2), Fraction(1, 3)):
            m = make_module(kind, [alpha], weyl)
            data = normalize_ddt_basis(m, range(-3, 4))
            rep = verify_yk_relations(data)
            assert rep.passed, rep.residual
            assert rep.details["i_values"] == [1, 3, 5]
