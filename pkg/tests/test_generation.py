"""Desk-scale certification that brackets of t^(i0)D, t^(i0+1)D, t^(i0)D^2
and a tail of pure D-polynomials generate every t^k D^m in a window."""

from fractions import Fraction

import pytest

from winfty.onevar import (DfElement, GeneratedSubalgebra,
                           generation_membership, standard_generators)
from winfty.weyl import Weyl, bracket

W1 = Weyl(1, subalgebra="w1")


@pytest.fixture(scope="module")
def sub_i1():
    return GeneratedSubalgebra(W1, standard_generators(W1, 1, 2),
                               deg_lo=0, deg_hi=40, d_cap=6)


def test_generator_is_member(sub_i1):
    assert sub_i1.membership(W1.tD((1,))) is not None


def test_t5d_member_via_nested_brackets(sub_i1):
    combo = sub_i1.membership(W1.tD((5,)))
    assert combo is not None
    # re-evaluate the witness from the generator list alone
    acc = W1.zero()
    for c, r in combo:
        acc = acc + sub_i1.eval_word(sub_i1.raw[r][1]).scale(c)
    assert acc == W1.tD((5,))


def test_degree_two_reduction_identity():
    # [t^(k-1)D, tD^2] = (3-2k) t^k D^2 + (degree-one terms), k = 12
    k = 12
    got = bracket(W1.tD((k - 1,)), W1.monomial((1,), (2,)))
    target = W1.monomial((k,), (2,), 3 - 2 * k)
    leftover = got - target
    assert all(mu == (1,) for (_g, mu) in leftover.terms)


def test_membership_of_d2_targets(sub_i1):
    for k in (3, 12, 25, 40):
        assert sub_i1.membership(W1.monomial((k,), (2,))) is not None


def test_nonmember_low_degree(sub_i1):
    # D and D^2 are not generated: the tail of pure D-polynomials starts
    # at order 3 and brackets cannot lower the Gamma-degree below 0
    assert sub_i1.membership(W1.D()) is None
    assert sub_i1.membership(W1.monomial((0,), (2,))) is None


def test_out_of_box_target_rejected(sub_i1):
    with pytest.raises(ValueError):
        sub_i1.membership(W1.monomial((41,), (1,)))


def test_generation_membership_report(sub_i1):
    rep = generation_membership(W1, 1, 2, DfElement.of(7, {2: Fraction(1)}),
                                sub=sub_i1)
    assert rep.passed
    witness = rep.details["witness"]
    assert witness and all(isinstance(w, tuple) and len(w) == 2
                           for w in witness)


def test_i0_2_coverage_sample():
    sub = GeneratedSubalgebra(W1, standard_generators(W1, 2, 2),
                              deg_lo=0, deg_hi=40, d_cap=6)
    for m in range(1, 5):
        for k in (6, 20, 40):
            assert sub.membership(W1.monomial((k,), (m,))) is not None
