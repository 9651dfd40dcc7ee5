import random
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordcut.algebraic import AlgebraicReal, add_alg, alg_arith, alg_cmp
from ordcut.errors import GroupMismatch, InvalidPivot
from ordcut.group import (INFINITY, Q, Z, Order, OrderedGroup, cmp_lex,
                          elt_arith, nat_val)
from ordcut.sampling import all_groups, rand_element

Z2 = OrderedGroup.of(Z, Z)
QQ = OrderedGroup.of(Q)
SQRT2 = AlgebraicReal.from_root([-2, 0, 1], 1, 2)


def first_nonzero_sign(coords):
    for c in coords:
        if c:
            return 1 if c > 0 else -1
    return 0


def test_cmp_lex_examples():
    assert cmp_lex(Z2.element(0, 5), Z2.element(1, -100)) is Order.LT
    assert cmp_lex(QQ.element(Fraction(1, 2)), QQ.element(Fraction(1, 2))) is Order.EQ
    assert cmp_lex(Z2.element(1, -3), Z2.element(1, -2)) is Order.LT


def test_cmp_lex_rejects_mismatched_groups():
    with pytest.raises(GroupMismatch):
        cmp_lex(Z2.element(0, 1), OrderedGroup.of(Z, Q).element(0, 1))


def test_nat_val_examples():
    assert nat_val(Z2.zero()) is INFINITY
    assert nat_val(Z2.element(0, 7)) == 2
    s = Z2.element(1, 0) + Z2.element(-1, 3)
    assert nat_val(s) == 2 >= min(nat_val(Z2.element(1, 0)), nat_val(Z2.element(-1, 3)))


def test_elt_arith_examples():
    assert elt_arith("add", Z2.element(1, 2), Z2.element(0, -2)) == Z2.element(1, 0)
    assert elt_arith("neg", Z2.element(0, 3)) == Z2.element(0, -3)
    assert elt_arith("scale_by_integer", 3, Z2.element(1, -1)) == Z2.element(3, -3)


def test_integrality_enforced():
    with pytest.raises(GroupMismatch):
        Z2.element(Fraction(1, 2), 0)


def test_trivial_group():
    g = OrderedGroup(())
    assert g.rank == 0
    assert g.zero() + g.zero() == g.zero()
    assert nat_val(g.zero()) is INFINITY
    assert len(g.convex_subgroups()) == 1


def test_convex_subgroups_are_tails():
    g = OrderedGroup.of(Z, Q, Z)
    subs = g.convex_subgroups()
    assert [s.level for s in subs] == [1, 2, 3, 4]
    assert g.unit(2) in subs[1] and g.unit(2) not in subs[2]


def test_order_laws_on_samples():
    rng = random.Random(7)
    for g in all_groups(3):
        for _ in range(500):
            a, b, c = (rand_element(rng, g) for _ in range(3))
            o = cmp_lex(a, b)
            assert o.value == first_nonzero_sign([x - y for x, y in zip(a.coords, b.coords)])
            assert cmp_lex(b, a).value == -o.value
            if a < b and b < c:
                assert a < c
            if a < b:
                assert a + c < b + c
            va, vb, vs = nat_val(a), nat_val(b), nat_val(a + b)
            assert vs >= min(va, vb)
            if va != vb:
                assert vs == min(va, vb)
            assert nat_val(-a) == va


@settings(max_examples=200, deadline=None)
@given(st.fractions(), st.fractions())
def test_rank_one_order_matches_fractions(x, y):
    assert (QQ.element(x) < QQ.element(y)) == (x < y)


def test_alg_cmp_examples():
    assert alg_cmp(SQRT2, 1) is Order.GT
    assert alg_cmp(SQRT2, Fraction(3, 2)) is Order.LT
    assert alg_cmp(SQRT2, Fraction(7, 5)) is Order.GT


def test_alg_cmp_squaring_oracle():
    rng = random.Random(3)
    for _ in range(300):
        q = Fraction(rng.randint(1, 3000), rng.randint(1, 1000))
        expected = Order.GT if q * q < 2 else Order.LT
        assert alg_cmp(SQRT2, q) is expected


def _sqrt_bounds(n, scale=10 ** 12):
    lo = isqrt(n * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


@pytest.mark.parametrize("name", ["sqrt2", "sqrt3", "sqrt5", "1+sqrt2", "-sqrt2"])
def test_fixed_pivots_against_decimal_bounds(name):
    base = {"sqrt2": 2, "sqrt3": 3, "sqrt5": 5, "1+sqrt2": 2, "-sqrt2": 2}[name]
    lo, hi = _sqrt_bounds(base)
    r = AlgebraicReal.sqrt(base)
    if name == "1+sqrt2":
        r, lo, hi = r.add_rational(1), lo + 1, hi + 1
    if name == "-sqrt2":
        r, lo, hi = -r, -hi, -lo
    assert alg_cmp(r, lo) is Order.GT
    assert alg_cmp(r, hi) is Order.LT
    rng = random.Random(base)
    for _ in range(50):
        q = Fraction(rng.randint(-4000, 4000), 1000)
        if q <= lo:
            assert alg_cmp(r, q) is Order.GT
        elif q >= hi:
            assert alg_cmp(r, q) is Order.LT


def test_alg_arith_examples():
    neg = alg_arith("negate", SQRT2)
    assert neg.lo >= -2 and neg.hi <= -1 and alg_cmp(neg, Fraction(-7, 5)) is Order.LT
    assert add_alg(SQRT2, -SQRT2) == 0
    shifted = alg_arith("add_rational", SQRT2, 1)
    assert alg_cmp(shifted, 2) is Order.GT and alg_cmp(shifted, 3) is Order.LT
    # substitute-and-refine: (x - 1)^2 - 2 vanishes there
    assert shifted == AlgebraicReal.from_root([-1, -2, 1], 2, 3)


def test_add_alg_irrational_sum():
    s = add_alg(AlgebraicReal.sqrt(2), AlgebraicReal.sqrt(3))
    # sqrt2 + sqrt3 = 3.1462643699...
    assert alg_cmp(s, Fraction(31462, 10000)) is Order.GT
    assert alg_cmp(s, Fraction(31463, 10000)) is Order.LT


@pytest.mark.parametrize("poly,lo,hi", [([-4, 0, 1], 1, 3), ([-2, 0, 1], -2, 2), ([-2, 0, 1], 2, 1), ([5], 0, 1)])
def test_invalid_pivots(poly, lo, hi):
    with pytest.raises(InvalidPivot):
        AlgebraicReal.from_root(poly, lo, hi)
