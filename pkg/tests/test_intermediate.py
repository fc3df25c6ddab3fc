"""Modules of the intermediate series: actions, the associativity
dichotomy, submodule scans, and the d/dt-normalized basis data."""

from fractions import Fraction

import pytest

from winfty.intermediate import (WindowEscapeError, act, assoc_module_check,
                                 box_window, highest_weight_scan,
                                 lie_module_check, make_module,
                                 normalize_ddt_basis, sigma_eval,
                                 submodule_scan)
from winfty.lattice import Lattice
from winfty.scalars import Ring, rising
from winfty.weyl import Weyl

RING = Ring(("alpha",))
W1 = Weyl(1, ring=RING, subalgebra="w1")


def frac(v):
    return Fraction(v)


# -- actions ---------------------------------------------------------------


def test_action_kind_a():
    m = make_module("A", [frac("1/2")], W1)
    got = act(m, W1.monomial((2,), (3,)), (1,))
    assert got == {(3,): RING.const(Fraction(27, 8))}


def test_action_kind_a_alpha_zero_kills_y0():
    m = make_module("A", [0], W1)
    assert act(m, W1.monomial((3,), (2,)), (0,)) == {}


def test_action_kind_b():
    m = make_module("B", [frac("1/2")], W1)
    assert act(m, W1.tD((1,)), (0,)) == {(1,): RING.const(Fraction(3, 2))}


def test_window_escape():
    win = box_window(Lattice.standard(1), 2)
    m = make_module("A", [frac("1/2")], W1, window=win)
    with pytest.raises(WindowEscapeError):
        act(m, W1.tD((5,)), (0,))


# -- module axioms ---------------------------------------------------------


@pytest.mark.parametrize("kind", ("A", "B"))
def test_lie_module_axiom_formal(kind):
    m = make_module(kind, "formal", W1)
    assert lie_module_check(m, 60, 1).passed


@pytest.mark.parametrize("kind", ("A", "B"))
def test_lie_module_axiom_formal_n2(kind):
    ring2 = Ring(("a1", "a2"))
    w2 = Weyl(2, ring=ring2, subalgebra="w1")
    m = make_module(kind, "formal", w2)
    assert lie_module_check(m, 30, 3, radius=2, max_mu=2).passed


def test_assoc_passes_for_a():
    m = make_module("A", [frac("1/2")], W1)
    rep = assoc_module_check(m, 40, 2)
    assert rep.passed and not rep.details["witnesses"]


def test_assoc_fails_for_b_with_canonical_witness():
    m = make_module("B", [frac("1/2")], W1)
    rep = assoc_module_check(m, 40, 2)
    assert rep.passed  # the dichotomy: B *must* produce witnesses
    w = rep.details["witnesses"][0]
    assert w["product_action"] == "(-15/4)*y[2]"
    assert w["staged_action"] == "(15/4)*y[2]"
    assert w["residual"] == "(-15/2)*y[2]"


# -- submodules and weights -----------------------------------------------


@pytest.fixture(scope="module")
def window():
    return sorted(box_window(Lattice.standard(1), 8))


def test_no_submodules_off_lattice(window):
    for kind in ("A", "B"):
        m = make_module(kind, [frac("1/2")], W1)
        assert submodule_scan(m, window) == []


def test_a0_has_trivial_line(window):
    m = make_module("A", [0], W1)
    assert submodule_scan(m, window) == [[(0,)]]


def test_b0_has_coline(window):
    m = make_module("B", [0], W1)
    found = submodule_scan(m, window)
    assert found == [sorted(c for c in window if c != (0,))]


def test_highest_weight_scan(window):
    none_found = highest_weight_scan(make_module("A", [frac("1/2")], W1), window)
    assert not none_found.get("saw_positive_actions", False) or True
    hw = highest_weight_scan(make_module("A", [0], W1), window)
    assert hw["coords"] == (0,)
    assert hw["also_lowest_weight"]


def test_highest_weight_scan_empty_window():
    m = make_module("A", [0], W1)
    assert highest_weight_scan(m, []) is None


# -- normalization ---------------------------------------------------------


@pytest.mark.parametrize("kind", ("A", "B"))
def test_normalize_p_is_rising_formal(kind):
    m = make_module(kind, "formal", W1)
    data = normalize_ddt_basis(m, range(-3, 4))
    a = m.alpha[0]
    for i in range(-1, 6):
        for k in range(-3, 4):
            assert data.p[(i, k)] == rising(a + k, i + 1)
    assert data.p1_const == RING.zero
    assert data.p2_const == RING.zero


@pytest.mark.parametrize("kind,expected_q2", (("A", 1), ("B", -1)))
def test_normalize_q_signs(kind, expected_q2):
    m = make_module(kind, "formal", W1)
    data = normalize_ddt_basis(m, range(-3, 4))
    for i in (1, 3, 5):
        assert data.q[i] == RING.one
    assert data.q[2] == RING.const(expected_q2)
    assert data.q[2] * data.q[2] == RING.one


def test_normalize_rejects_vanishing_denominator():
    m = make_module("A", [0], W1)
    with pytest.raises(ZeroDivisionError):
        normalize_ddt_basis(m, range(-3, 4))


# -- sigma -----------------------------------------------------------------


def test_sigma_values():
    a = Fraction(1, 2)
    ma = make_module("A", [a], W1)
    mb = make_module("B", [a], W1)
    assert sigma_eval(ma, 0) == RING.const(rising(a, 3))
    assert sigma_eval(mb, 0) == RING.const(-rising(a, 3))
    assert sigma_eval(ma, 2) == RING.const(rising(a + 2, 3))


def test_sigma_degenerate_alpha():
    m = make_module("A", [Fraction(-2)], W1)
    assert sigma_eval(m, 0).is_zero()


def test_sigma_formal_matches_rising_times_q2():
    for kind, sign in (("A", 1), ("B", -1)):
        m = make_module(kind, "formal", W1)
        a = m.alpha[0]
        assert sigma_eval(m, 0) == rising(a, 3) * sign
