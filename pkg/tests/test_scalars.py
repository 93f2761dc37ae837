"""Field axioms and root-adjunction behaviour of the scalar tower."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitcert.scalars import Scalar, Tower, TowerError

from conftest import gauss, gauss_nonzero, rationals

T = Tower()


@given(gauss(T), gauss_nonzero(T))
def test_multiply_then_divide_recovers(b, a):
    assert (a * b) * a.inv() == b
    assert (a * b) / a == b


@given(gauss(T), gauss(T), gauss(T))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(gauss(T))
def test_conjugation_involution(a):
    assert a.conj().conj() == a


@given(gauss(T), gauss(T))
def test_conjugation_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()


@given(gauss(T))
def test_real_imag_decomposition(a):
    assert a == a.real_part() + T.i() * a.imag_part()
    assert a.real_part().is_real() and a.imag_part().is_real()


def test_adjoined_root_squares_to_radicand():
    t = Tower()
    r2 = t.adjoin_sqrt(2)
    assert r2 * r2 == t.scalar(2)
    r3 = t.adjoin_sqrt(Fraction(3, 5))
    assert r3 * r3 == t.scalar(Fraction(3, 5))
    # a root of a root
    rr2 = t.adjoin_sqrt(r2)
    assert rr2 * rr2 == r2
    assert (rr2 ** 4) == t.scalar(2)


def test_perfect_squares_do_not_deepen_the_tower():
    t = Tower()
    assert t.adjoin_sqrt(Fraction(9, 4)) == t.scalar(Fraction(3, 2))
    assert t.depth == 0
    r2 = t.adjoin_sqrt(2)
    assert t.depth == 1
    # 8 = (2*sqrt2)^2 is already a square once sqrt2 is present
    assert t.adjoin_sqrt(8) == t.scalar(2) * r2
    assert t.depth == 1


def test_inverse_in_a_quadratic_extension():
    t = Tower()
    r2 = t.adjoin_sqrt(2)
    s = t.one() + r2
    assert s * s.inv() == t.one()
    assert s.inv() == r2 - t.one()  # 1/(1+sqrt2) = sqrt2 - 1


def test_sign_of_nested_radicals():
    t = Tower()
    r2 = t.adjoin_sqrt(2)
    r3 = t.adjoin_sqrt(3)
    assert (r2 - t.one()).sign() == 1
    assert (t.one() - r2).sign() == -1
    assert (r2 + r3 - t.scalar(3)).sign() == 1    # 1.41 + 1.73 > 3
    assert (r2 + r3 - t.scalar(4)).sign() == -1
    assert (r2 * r3 - t.adjoin_sqrt(6)).sign() == 0
    with pytest.raises(TowerError):
        t.i().sign()


@given(rationals.filter(lambda x: x > 0))
def test_sqrt_consistency(x):
    t = Tower()
    r = t.adjoin_sqrt(x)
    assert r.sign() >= 0
    assert r * r == t.scalar(x)


def test_text_round_trip():
    t = Tower()
    for re, im in [(0, 0), (1, 0), (Fraction(-3, 7), Fraction(2, 5))]:
        s = t.scalar(re, im)
        assert Scalar.from_text(t, s.to_text()) == s


def test_json_round_trip_with_roots():
    t = Tower()
    r2 = t.adjoin_sqrt(2)
    s = t.scalar(Fraction(1, 3), -2) + r2 * t.i()
    obj = s.to_json()
    t2 = Tower.deserialize(obj["radicands"])
    s2 = Scalar.from_json(obj, t2)
    assert s2.to_json() == obj
    assert (s2 * s2).to_json() == (s * s).to_json()


def test_tower_coercion_is_prefix_only():
    base = Tower()
    deep = base.clone()
    r2 = deep.adjoin_sqrt(2)
    # base scalars combine with deep ones (result lives in the deep tower)
    x = base.one() + r2
    assert x._tower is deep
    other = Tower()
    other.adjoin_sqrt(3)
    with pytest.raises(TowerError):
        r2 + other.root(0)


def test_embed_merges_unrelated_towers():
    a = Tower()
    ra = a.adjoin_sqrt(2)
    b = Tower()
    rb = b.adjoin_sqrt(3)
    host = Tower()
    x = host.embed(ra + a.one())
    y = host.embed(rb)
    assert (x - host.one()) * (x - host.one()) == host.scalar(2)
    assert y * y == host.scalar(3)
    assert host.depth == 2
    # re-embedding reuses the radical instead of growing the tower
    assert host.embed(ra) == x - host.one()
    assert host.depth == 2


def test_embed_handles_nested_radicals():
    src = Tower()
    r2 = src.adjoin_sqrt(2)
    nested = src.adjoin_sqrt(src.one() + r2)   # sqrt(1 + sqrt2)
    host = Tower()
    host.adjoin_sqrt(2)
    moved = host.embed(nested * src.i())
    assert (moved * moved) == -(host.one() + host.embed(r2))


def test_as_fraction_guards():
    t = Tower()
    assert t.scalar(Fraction(5, 3)).as_fraction() == Fraction(5, 3)
    with pytest.raises(TowerError):
        t.i().as_fraction()
    with pytest.raises(TowerError):
        t.adjoin_sqrt(7).as_fraction()
