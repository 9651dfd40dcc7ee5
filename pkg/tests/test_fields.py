import random
from fractions import Fraction

import pytest

from ordcut import cuts as C
from ordcut import fields as F
from ordcut.algebraic import AlgebraicReal
from ordcut.errors import CutNotPositive, NotPositiveElement
from ordcut.group import Q, Z, OrderedGroup
from ordcut.sampling import field_cut_corpus, rand_module_segment, rand_series
from ordcut.series import Series

Z1, Z2 = OrderedGroup.of(Z), OrderedGroup.of(Z, Z)
SQRT2 = AlgebraicReal.sqrt(2)


def t(group, *coords, c=1):
    return Series.monomial(group, c, group.element(*coords))


def test_valuation_ring_module_is_prin_minus():
    m = F.ModuleDesc.valuation_ring(Z1)
    assert C.cuts_equal(F.module_to_value_cut(m), C.Prin(Z1.zero(), C.MINUS))
    assert F.value_cut_to_module(C.Top(Z1)).is_zero()


def test_module_round_trip():
    rng = random.Random(4)
    for g in (Z1, Z2, OrderedGroup.of(Q, Z)):
        for _ in range(35):
            seg = rand_module_segment(rng, g)
            m = F.value_cut_to_module(seg)
            assert C.cuts_equal(F.module_to_value_cut(m), seg)
            assert F.value_cut_to_module(F.module_to_value_cut(m)) == m


def test_module_membership_is_by_value():
    m = F.ModuleDesc.at_least(Z2.element(1, 0))
    assert m.contains(t(Z2, 1, 0)) and m.contains(t(Z2, 2, -5))
    assert not m.contains(t(Z2, 1, -1)) and not m.contains(t(Z2, 0, 9))
    assert m.contains(Series.zero(Z2))


def test_field_invariance_module_examples():
    irr = F.IrrF(Series.zero(Z1), Z1.zero(), SQRT2)
    assert F.field_invariance_module(irr) == F.ModuleDesc.above(Z1.zero())
    ov = F.ModuleDesc.valuation_ring(Z1)
    assert F.field_invariance_module(F.BallF(Series.constant(Z1, 3), ov, C.PLUS)) == ov
    assert F.field_invariance_module(F.PrinF(t(Z1, 2), C.PLUS)).is_zero()


def test_irr_invariance_by_shifting():
    irr = F.IrrF(Series.zero(Z1), Z1.zero(), SQRT2)
    rng = random.Random(9)
    for _ in range(200):
        b = rand_series(rng, Z1, nonzero=True)
        fixed = F.field_cuts_equal(F.shift_field_cut(irr, b), irr)
        assert fixed == (b.valuation().sign() > 0)


def test_invariance_ring_examples():
    irr = F.IrrF(Series.zero(Z1), Z1.zero(), SQRT2)
    ring = F.invariance_valuation_ring(irr)
    assert ring.is_finest() and not ring.trivial_invariance
    s = C.Ball(Z2.zero(), 2, C.PLUS)  # upper set {g : g1 >= 1}
    ball = F.BallF(Series.zero(Z2), F.ModuleDesc(s), C.PLUS)
    assert F.invariance_valuation_ring(ball).level == 2
    prin = F.invariance_valuation_ring(F.PrinF(Series.zero(Z2), C.PLUS))
    assert prin.is_whole_field() and prin.trivial_invariance


def test_invariance_ring_matches_definition():
    # b * M_S = M_(S + v(b)), so b fixes G(cut) iff S + v(b) lies inside S
    rng = random.Random(12)
    for cut in field_cut_corpus(5, per_group=2, max_rank=2):
        m = F.field_invariance_module(cut)
        ring = F.invariance_valuation_ring(cut)
        if ring.trivial_invariance:
            continue
        members = [y for y in (rand_series(rng, cut.group, nonzero=True) for _ in range(60)) if m.contains(y)]
        for _ in range(25):
            b = rand_series(rng, cut.group, nonzero=True)
            closed = C.cut_le(m.segment, m.shifted(b.valuation()).segment)
            assert ring.contains(b) == closed, (cut, b)
            if closed:
                assert all(m.contains(b * y) for y in members)


def test_mult_invariance_examples():
    ball = F.BallF(Series.zero(Z1), F.ModuleDesc.valuation_ring(Z1), C.PLUS)
    assert F.mult_invariance_member(ball, Series.constant(Z1, 3) + t(Z1, 2))
    assert not F.mult_invariance_member(ball, t(Z1, 1))
    for cut in field_cut_corpus(2, per_group=2, max_rank=2):
        if F.is_positive(cut):
            assert F.mult_invariance_member(cut, Series.constant(cut.group, 1))


def test_mult_invariance_errors():
    neg = F.PrinF(Series.constant(Z1, -1), C.PLUS)
    with pytest.raises(CutNotPositive):
        F.mult_invariance_member(neg, Series.constant(Z1, 1))
    pos = F.PrinF(Series.constant(Z1, 1), C.PLUS)
    with pytest.raises(NotPositiveElement):
        F.mult_invariance_member(pos, Series.constant(Z1, -2))


def test_projection_examples():
    irr = F.IrrF(Series.zero(Z1), Z1.zero(), SQRT2)
    p = F.project_cut(irr, F.ValuationRingDesc(Z1, 2))
    assert p.projectable
    assert p.c == Series.constant(Z1, 1) and p.a.is_zero()
    assert C.cuts_equal(F.residue_as_group_cut(p.residue_cut), C.Irr(OrderedGroup.of(Q).zero(), 1, SQRT2))
    whole = F.project_cut(irr, F.ValuationRingDesc(Z1, 1))
    assert whole.projectable and F.field_cuts_equal(whole.residue_cut, irr)
    s = C.Ball(Z2.zero(), 2, C.PLUS)
    ball = F.BallF(Series.zero(Z2), F.ModuleDesc(s), C.PLUS)
    assert not F.project_cut(ball, F.ValuationRingDesc(Z2, 3)).projectable


def test_projection_residue_membership():
    irr = F.IrrF(t(Z1, -1, c=2), Z1.element(1), SQRT2)
    ring = F.ValuationRingDesc(Z1, 2)
    p = F.project_cut(irr, ring)
    rng = random.Random(2)
    q = OrderedGroup.of(Q)
    res = F.residue_as_group_cut(p.residue_cut)
    for _ in range(200):
        u = Series.constant(Z1, Fraction(rng.randint(-300, 300), 100)) + t(Z1, rng.randint(1, 3), c=rng.randint(-5, 5) or 1)
        # u lies in O_v; its residue decides its side in c*cut + a
        assert F.residue_cut_side(p, irr, u) == C.side_of(res, q.element(u.coeff(Z1.zero())))
