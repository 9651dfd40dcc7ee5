import random
from fractions import Fraction

import pytest

from ordcut.errors import (DivisionByZero, GroupMismatch, InfinitePrecisionRequested,
                           NotInRing)
from ordcut.group import INFINITY, Q, Z, OrderedGroup, nat_val
from ordcut.sampling import field_groups, rand_series
from ordcut.series import Series, residue, series_arith, series_inverse

Z1 = OrderedGroup.of(Z)
Z2 = OrderedGroup.of(Z, Z)


def t(group, *coords, c=1):
    return Series.monomial(group, c, group.element(*coords))


def const(group, c):
    return Series.constant(group, c)


def test_arith_examples():
    one = const(Z1, 1)
    assert (one + t(Z1, 1)) * (one - t(Z1, 1)) == one - t(Z1, 2)
    x = const(Z1, 3) - t(Z1, -2, c=Fraction(1, 2))
    zero = series_arith("add", x, series_arith("neg", x))
    assert zero.is_zero() and zero.precision is INFINITY
    assert (t(Z2, 1, 0) + t(Z2, 0, 1)).valuation() == Z2.element(0, 1)


def test_arith_rejects_mixed_groups():
    with pytest.raises(GroupMismatch):
        series_arith("add", const(Z1, 1), const(Z2, 1))


def test_mul_precision_propagates():
    x = Series(Z1, [(Z1.element(1), Fraction(1))], Z1.element(4))
    y = const(Z1, 2) + t(Z1, 1)
    # y is exact, so the product is known up to v(y) + 4
    assert (x * y).precision == Z1.element(4)
    y3 = Series(Z1, [(Z1.element(-1), Fraction(1))], Z1.element(2))
    assert (x * y3).precision == min(Z1.element(1) + Z1.element(2), Z1.element(-1) + Z1.element(4))


def test_inverse_examples():
    one = const(Z1, 1)
    inv = series_inverse(one - t(Z1, 1), Z1.element(5))
    assert inv.terms == sum((t(Z1, i) for i in range(1, 5)), one).terms
    assert inv.precision == Z1.element(5)
    assert series_inverse(t(Z1, 1), INFINITY) == t(Z1, -1)
    assert series_inverse(const(Z1, 2), INFINITY) == const(Z1, Fraction(1, 2))


def test_inverse_errors():
    with pytest.raises(DivisionByZero):
        series_inverse(Series.zero(Z1), Z1.element(3))
    with pytest.raises(InfinitePrecisionRequested):
        series_inverse(const(Z1, 1) - t(Z1, 1), INFINITY)
    # in Z x Z the geometric series in t^(0,1) never reaches (1, 0)
    with pytest.raises(InfinitePrecisionRequested):
        series_inverse(const(Z2, 1) + t(Z2, 0, 1), Z2.element(1, 0))


def test_inverse_multiplies_back():
    rng = random.Random(11)
    checked = 0
    for g in field_groups(2):
        for _ in range(40):
            x = rand_series(rng, g, nonzero=True)
            gamma = x.valuation() + g.unit(g.rank).scale(4)
            try:
                y = series_inverse(x, gamma)
            except InfinitePrecisionRequested:
                continue
            err = x * Series(g, y.terms) - const(g, 1)
            assert err.is_zero() or err.valuation() >= gamma
            assert y.valuation() == -x.valuation()
            checked += 1
    assert checked > 20


def test_sign_and_valuation():
    x = t(Z2, 0, -3, c=-2) + const(Z2, 5)
    assert x.sign() == -1
    assert Series.zero(Z2).valuation() is INFINITY
    rng = random.Random(5)
    for g in field_groups(3):
        for _ in range(60):
            a, b = rand_series(rng, g, nonzero=True), rand_series(rng, g, nonzero=True)
            assert (a * b).valuation() == a.valuation() + b.valuation()
            s = a + b
            if not s.is_zero():
                assert s.valuation() >= min(a.valuation(), b.valuation())
            if a.sign() > 0 and b.sign() > 0:
                assert (a + b).sign() > 0 and (a * b).sign() > 0


def test_field_axioms_on_samples():
    rng = random.Random(3)
    for g in field_groups(2):
        for _ in range(40):
            x, y, z = (rand_series(rng, g) for _ in range(3))
            assert x * (y + z) == x * y + x * z
            assert x * y == y * x and x + y == y + x
            assert (x * y) * z == x * (y * z)
            assert (x + y) + z == x + (y + z)


def test_residue_examples():
    x = const(Z2, 3) + t(Z2, 0, 1)
    assert residue(x, 2) == const(Z1, 3) + t(Z1, 1)
    assert residue(const(Z2, 3) + t(Z2, 1, 0), 2) == const(Z1, 3)
    with pytest.raises(NotInRing):
        residue(t(Z2, -1, 0), 2)


def test_residue_is_a_ring_morphism():
    rng = random.Random(8)
    g = OrderedGroup.of(Z, Q, Z)
    for k in (2, 3, 4):
        for _ in range(80):
            x, y = rand_series(rng, g), rand_series(rng, g)
            try:
                rx, ry = residue(x, k), residue(y, k)
            except NotInRing:
                continue
            assert residue(x + y, k) == rx + ry
            assert residue(x * y, k) == rx * ry
            v = x.valuation()
            killed = v is INFINITY or (v.sign() > 0 and nat_val(v) < k)
            assert rx.is_zero() == killed


def test_str_round_trips_through_literals():
    from ordcut.dsl import parse_value
    x = t(Z2, 0, -3, c=-2) + const(Z2, Fraction(5, 7))
    assert parse_value(str(x), Z2) == x
