"""Free abelian groups embedded in Q^n and their membership solver."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from winfty.lattice import Direction, Lattice, inner


def test_standard_membership():
    z2 = Lattice.standard(2)
    assert z2.membership((2, 3)) == (2, 3)
    assert z2.membership((Fraction(1, 2), 0)) is None


def test_skew_membership():
    g = Lattice([(1, 0), (1, 2)])
    assert g.membership((0, 2)) == (-1, 1)
    assert g.membership((1, 1)) is None  # 1 = a + b, 1 = 2b has b = 1/2


def test_membership_dimension_mismatch():
    with pytest.raises(ValueError):
        Lattice.standard(2).membership((1, 2, 3))


def test_dependent_generators_rejected():
    with pytest.raises(ValueError):
        Lattice([(1, 1), (2, 2), (0, 3)])


def test_nondegenerate():
    assert Lattice.standard(2).nondegenerate()
    assert not Lattice([(1, 0)]).nondegenerate()  # rank 1 inside Q^2


def test_inner_examples():
    d = Direction.of((1, 3))
    assert inner((1, 2), d) == 7
    assert inner((0, 0), d) == 0
    assert inner((1, -1), Direction.of((1, 1))) == 0


def test_point_arithmetic():
    lat = Lattice([(1, 0), (1, 2)])
    p = lat.point((1, 1))
    q = lat.point((0, 2))
    assert (p + q).coords == (1, 3)
    assert (p - q).coords == (1, -1)
    assert (-p).coords == (-1, -1)
    assert p.ambient == (Fraction(2), Fraction(2))


@given(st.lists(st.integers(-20, 20), min_size=2, max_size=2))
@settings(max_examples=100, deadline=None)
def test_membership_inverts_ambient(coords):
    lat = Lattice([(1, 0), (1, 2)])
    assert lat.membership(lat.ambient(coords)) == tuple(coords)
