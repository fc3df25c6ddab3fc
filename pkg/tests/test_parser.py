"""Grammar round-trip and error reporting for the expression parser."""

import random
from fractions import Fraction

import pytest

from winfty.parser import (ParseError, Session, UnknownSymbolError, as_element,
                           parse, parse_element)
from winfty.printer import format_element
from winfty.scalars import Ring, Scalar
from winfty.weyl import SubalgebraError, Weyl

W = Weyl(1)
W1 = Weyl(1, subalgebra="w1")
S = Session(W)
S1 = Session(W1)


def test_monomial_td():
    assert parse_element("t^(1)*D", S1) == W1.tD((1,))


def test_bracket_expression():
    assert parse_element("[t^(1)*D, t^(2)*D]", S1) == W1.tD((3,))


def test_two_variable_monomial():
    w2 = Weyl(2)
    got = parse_element("3/2*t[1,0]*D1^2*D2", Session(w2))
    assert got == w2.monomial((1, 0), (2, 1), Fraction(3, 2))


def test_precedence_pow_over_mul_over_add():
    got = parse_element("2*D^2 + 3*t^(1)*D", S)
    assert got == W.monomial((0,), (2,), 2) + W.tD((1,)).scale(3)


def test_parentheses_and_unary_minus():
    got = parse_element("-(t^(1)*D - t^(2)*D)", S)
    assert got == W.tD((2,)) - W.tD((1,))


def test_ddt_powers_go_through_the_product():
    got = parse_element("(d/dt)^2", S)
    assert got == W.monomial((-2,), (2,)) - W.monomial((-2,), (1,))


def test_cube_identity_via_parser():
    res = parse_element("[(d/dt)^2,[(d/dt)^2,t^(2)*d/dt]] - 8*(d/dt)^3", S)
    assert res.is_zero()


def test_falling_monomial():
    got = parse_element("t^(2)*[D]_3", S)
    assert got == W.monomial((2,), (3,), basis="falling")


def test_central_element_requires_hat():
    hat = Weyl(1, subalgebra="hat")
    got = parse_element("t^(1)*D + 5/3*C", Session(hat))
    assert got.central == hat.ring.const(Fraction(5, 3))
    with pytest.raises(UnknownSymbolError):
        parse_element("C", S)


def test_scalar_expressions():
    ring = Ring(("alpha",))
    sess = Session(Weyl(1, ring=ring))
    got = parse_element("(alpha + 1)^2", sess)
    assert isinstance(got, Scalar)
    a = ring.sym("alpha")
    assert got == a * a + 2 * a + 1


def test_syntax_error_carries_position():
    with pytest.raises(ParseError) as err:
        parse("t^(1)* + D")
    assert err.value.position == 7


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError):
        parse_element("t^(1)*D*zeta", S)


def test_subalgebra_violation_in_w1_mode():
    with pytest.raises(SubalgebraError):
        parse_element("t^(1)", S1)


def test_dimension_errors():
    with pytest.raises(ParseError):
        parse_element("t[1,0]*D1", S)  # n = 1 session
    w2 = Weyl(2)
    with pytest.raises(ParseError):
        parse_element("D", Session(w2))  # ambiguous without index
    with pytest.raises(ParseError):
        parse_element("D3", Session(w2))


def rand_elt(weyl, rng, basis="power", allow_sym=False, central=False):
    out = weyl.zero(basis)
    for _ in range(rng.randint(1, 5)):
        g = tuple(Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
                  for _ in range(weyl.n))
        mu = [0] * weyl.n
        for _ in range(rng.randint(0, 3)):
            mu[rng.randrange(weyl.n)] += 1
        if weyl.subalgebra != "full" and sum(mu) == 0:
            mu[0] = 1
        c = weyl.ring.const(Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)))
        if allow_sym and rng.random() < 0.4:
            c = c + weyl.ring.sym("alpha") ** rng.randint(1, 2)
        out = out + weyl.monomial(g, tuple(mu), c, basis=basis)
    if central and rng.random() < 0.7:
        out = out + weyl.central(Fraction(rng.randint(-5, 5) or 2, 3))
    return out


def test_round_trip_500_random_elements():
    rng = random.Random(11)
    ringp = Ring(("alpha", "beta"))
    settings = [
        (lambda: Weyl(1), "power", False, False),
        (lambda: Weyl(2), "power", False, False),
        (lambda: Weyl(1, subalgebra="w1"), "power", False, False),
        (lambda: Weyl(1, ring=ringp, subalgebra="hat"), "power", True, True),
        (lambda: Weyl(1), "falling", False, False),
        (lambda: Weyl(2, ring=ringp), "falling", True, False),
    ]
    done = 0
    while done < 500:
        make, basis, sym, cen = rng.choice(settings)
        weyl = make()
        x = rand_elt(weyl, rng, basis, sym, cen)
        if x.is_zero():
            continue
        text = format_element(x)
        y = as_element(parse_element(text, Session(weyl)), weyl)
        assert y == x, text
        done += 1
