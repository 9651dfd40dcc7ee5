import random
from fractions import Fraction

import pytest

from ordcut import cuts as C
from ordcut.algebraic import AlgebraicReal
from ordcut.errors import (GroupMismatch, InvalidLevel, NotCoarseEnough,
                           NotDedekind, TrivialQuotient)
from ordcut.group import Q, Z, OrderedGroup
from ordcut.sampling import (cut_corpus, rand_element, random_cut_corpus,
                             sample_elements)

Z1, Q1 = OrderedGroup.of(Z), OrderedGroup.of(Q)
Z2, Q2, Q3 = OrderedGroup.of(Z, Z), OrderedGroup.of(Q, Q), OrderedGroup.of(Q, Q, Q)
SQRT2 = AlgebraicReal.sqrt(2)
SQRT3 = AlgebraicReal.sqrt(3)
ONE, ALEPH0 = C.Card.ONE, C.Card.ALEPH0


def opposite(side):
    return C.MINUS if side == C.PLUS else C.PLUS


@pytest.fixture(scope="module")
def corpus():
    return cut_corpus(11)


def test_side_of_examples():
    assert C.side_of(C.Ball(Z2.zero(), 2, C.PLUS), Z2.element(0, 5)) == C.LEFT
    assert C.side_of(C.Ball(Z2.zero(), 2, C.PLUS), Z2.element(1, -100)) == C.RIGHT
    assert C.side_of(C.Irr(Q1.zero(), 1, SQRT2), Q1.element(Fraction(7, 5))) == C.LEFT


def test_side_of_group_mismatch():
    with pytest.raises(GroupMismatch):
        C.side_of(C.Prin(Z2.zero(), C.PLUS), Q2.zero())


def test_singleton_cuts():
    assert C.cut_from_singleton(Z2.zero(), C.PLUS) == C.Prin(Z2.zero(), C.PLUS)
    assert C.cut_from_singleton(Z2.element(1, -2), C.MINUS) == C.Prin(Z2.element(1, -2), C.MINUS)
    rng = random.Random(1)
    for _ in range(100):
        a = rand_element(rng, Q3)
        assert C.side_of(C.cut_from_singleton(a, C.PLUS), a) == C.LEFT


def test_cut_from_coset_examples():
    assert C.cut_from_coset(Z2.element(1, 0), 2, C.MINUS) == C.Ball(Z2.zero(), 2, C.PLUS)
    assert C.cut_from_coset(Q2.element(1, 0), 2, C.MINUS) == C.Ball(Q2.element(1, 0), 2, C.MINUS)
    assert C.cut_from_coset(Z2.element(2, 3), 3, C.PLUS) == C.Prin(Z2.element(2, 3), C.PLUS)
    with pytest.raises(InvalidLevel):
        C.cut_from_coset(Z2.zero(), 4, C.PLUS)


def test_q2_edges_differ_from_plus_forms():
    rng = random.Random(2)
    lower = C.Ball(Q2.element(1, 0), 2, C.MINUS)
    xs = sample_elements(rng, Q2, 300, lower)
    # no + edge of any coset at level 2 among nearby anchors reproduces it
    for a in (0, Fraction(1, 2), Fraction(99, 100), 1):
        plus = C.Ball(Q2.element(a, 0), 2, C.PLUS)
        assert any(C.side_of(plus, x) != C.side_of(lower, x) for x in xs + [Q2.element(a, 0)])


def test_cuts_equal_examples():
    assert C.cuts_equal(C.Ball(Z2.zero(), 2, C.PLUS), C.Ball(Z2.element(1, 0), 2, C.MINUS))
    a = Z2.element(3, 1)
    assert not C.cuts_equal(C.Prin(a, C.PLUS), C.Prin(a, C.MINUS))
    r2, r3 = C.Irr(Q1.zero(), 1, SQRT2), C.Irr(Q1.zero(), 1, SQRT3)
    assert not C.cuts_equal(r2, r3)
    w = Q1.element(Fraction(3, 2))
    assert C.side_of(r2, w) != C.side_of(r3, w)


def test_invariance_group_examples():
    for g in (Z1, Q2, Q3):
        assert C.invariance_group(C.Top(g)).level == 1
    assert C.invariance_level(C.Ball(Z2.zero(), 2, C.PLUS)) == 2
    assert C.invariance_level(C.Prin(Z2.zero(), C.PLUS)) == 3
    assert C.invariance_level(C.Irr(Q2.zero(), 1, SQRT2)) == 2


def test_invariance_definitional_z2_ball():
    rng = random.Random(3)
    cut = C.Ball(Z2.zero(), 2, C.PLUS)
    for _ in range(200):
        g = rand_element(rng, Z2)
        moved = not C.cuts_equal(C.shift(cut, g), cut)
        assert moved == (g[1] != 0)


def test_signature_examples():
    assert C.signature(C.Irr(Q1.zero(), 1, SQRT2)) == 0
    ball = C.Ball(Z2.zero(), 2, C.PLUS)
    assert C.signature(ball) == 1 and C.both_edges(ball)
    lower = C.Ball(Q2.element(1, 0), 2, C.MINUS)
    assert C.signature(lower) == -1 and not C.both_edges(lower)
    with pytest.raises(NotDedekind):
        C.signature(C.Top(Z2))


def test_is_group_cut_examples():
    assert C.is_group_cut(C.Ball(Z2.zero(), 2, C.PLUS))
    assert not C.is_group_cut(C.Ball(Q2.element(1, 0), 2, C.MINUS))
    assert C.is_group_cut(C.Prin(Q2.zero(), C.MINUS))
    assert C.is_group_cut(C.Top(Q2)) and C.is_group_cut(C.Bot(Q2))
    assert not C.is_group_cut(C.Prin(Q2.element(0, 1), C.PLUS))


def test_transform_examples(corpus):
    a, h = Q2.element(1, 2), Q2.element(-3, Fraction(1, 2))
    assert C.shift(C.Prin(a, C.PLUS), h) == C.Prin(a + h, C.PLUS)
    assert C.reflect(C.Irr(Q1.zero(), 1, SQRT2)) == C.Irr(Q1.zero(), 1, -SQRT2)
    for cut in corpus:
        assert C.cuts_equal(C.reflect(C.reflect(cut)), cut)


def test_membership_monotone_and_shift_equivariant(corpus):
    rng = random.Random(4)
    for cut in corpus:
        g = cut.group
        xs = sample_elements(rng, g, 12, cut)
        for x in xs:
            y = rand_element(rng, g)
            lo, hi = min(x, y), max(x, y)
            if C.side_of(cut, hi) == C.LEFT:
                assert C.side_of(cut, lo) == C.LEFT
            h = rand_element(rng, g)
            assert C.side_of(C.shift(cut, h), x + h) == C.side_of(cut, x)


def test_reflect_is_the_order_reversal(corpus):
    rng = random.Random(5)
    for cut in corpus:
        r = C.reflect(cut)
        for x in sample_elements(rng, cut.group, 10, cut):
            # -x is in the reflected lower set iff x is in the upper set
            assert (C.side_of(r, -x) == C.LEFT) == (C.side_of(cut, x) == C.RIGHT)


def test_reflect_swaps_signature_witnesses(corpus):
    for cut in corpus:
        if not cut.is_dedekind():
            continue
        r = C.reflect(cut)
        sig = C.signature(cut)
        if sig == 0:
            assert C.signature(r) == 0
        elif C.both_edges(cut):
            # the edge pair is symmetric: both signs stay available
            assert C.both_edges(r)
        else:
            assert C.signature(r) == -sig
        assert C.cofinality(r) == C.cofinality(cut).swapped()


def test_add_cut_examples(corpus):
    for cut in corpus:
        if cut.is_dedekind() and any(a.is_zero() and side == C.PLUS
                                     for a, _, side in C.edge_representations(cut)):
            assert C.cuts_equal(C.add_cut(cut, cut, "left"), cut)
        if cut.is_dedekind():
            assert C.cuts_equal(C.add_cut(C.Prin(cut.group.zero(), C.PLUS), cut, "left"), cut)
            assert C.cuts_equal(C.add_cut(C.Prin(cut.group.zero(), C.MINUS), cut, "right"), cut)
    s = C.add_cut(C.Irr(Q1.zero(), 1, SQRT2), C.Irr(Q1.zero(), 1, -SQRT2), "left")
    assert C.cuts_equal(s, C.Prin(Q1.zero(), C.MINUS))
    # sampled x < sqrt2, y < -sqrt2 give x + y < 0
    rng = random.Random(6)
    for _ in range(200):
        x = SQRT2.refined(Fraction(1, 10 ** 6)).lo - Fraction(rng.randint(0, 1000), 997)
        y = -SQRT2.refined(Fraction(1, 10 ** 6)).hi - Fraction(rng.randint(0, 1000), 991)
        assert C.side_of(s, Q1.element(x + y)) == C.LEFT


def test_add_cut_documented_rows():
    a, b = Z2.element(1, 2), Z2.element(-3, 5)
    assert C.cuts_equal(C.add_cut(C.Prin(a, C.PLUS), C.Prin(b, C.PLUS), "left"), C.Prin(a + b, C.PLUS))
    g = OrderedGroup.of(Q, Q, Z)
    x, y = g.element(1, 2, 0), g.element(0, -1, 0)
    got = C.add_cut(C.Ball(x, 3, C.PLUS), C.Ball(y, 2, C.PLUS), "left")
    assert C.cuts_equal(got, C.Ball(x + y, 2, C.PLUS))


def test_add_cut_rejects_edges():
    with pytest.raises(NotDedekind):
        C.add_cut(C.Top(Q1), C.Prin(Q1.zero(), C.PLUS), "left")


def test_quotient_examples():
    q = C.quotient_cut(C.Ball(Z2.zero(), 2, C.PLUS), 2)
    assert q == C.Prin(Z1.zero(), C.PLUS)
    assert C.invariance_level(q) == q.group.rank + 1
    with pytest.raises(NotCoarseEnough):
        C.quotient_cut(C.Prin(Z2.element(1, 0), C.PLUS), 2)
    with pytest.raises(TrivialQuotient):
        C.quotient_cut(C.Ball(Z2.zero(), 2, C.PLUS), 1)
    a = Q3.element(Fraction(1, 3), 0, 0)
    cut = C.Irr(a, 1, SQRT2)
    qc = C.quotient_cut(cut, 3)
    assert qc.group == Q2
    assert C.cuts_equal(qc, C.Irr(a.project(3), 1, SQRT2))
    rng = random.Random(8)
    for x in sample_elements(rng, Q3, 500, cut):
        assert C.side_of(qc, x.project(3)) == C.side_of(cut, x)


def test_cofinality_examples():
    assert C.cofinality(C.Prin(Z1.zero(), C.PLUS)) == C.Cofinality(ONE, ONE)
    assert C.cofinality(C.Prin(Q1.zero(), C.PLUS)) == C.Cofinality(ONE, ALEPH0)
    assert C.cofinality(C.Irr(Q1.zero(), 1, SQRT2)) == C.Cofinality(ALEPH0, ALEPH0)
    assert C.is_jump(C.Prin(Z1.zero(), C.MINUS))
    assert not C.is_symmetric(C.Prin(Q1.zero(), C.MINUS))
    with pytest.raises(NotDedekind):
        C.cofinality(C.Bot(Q1))


def test_same_r_place_examples():
    a = Q1.element(1)
    assert C.same_r_place(C.Prin(a, C.MINUS), C.Prin(a, C.PLUS))
    b = Q2.element(1, 0)
    assert C.same_r_place(C.Ball(b, 2, C.MINUS), C.Ball(b, 2, C.PLUS))
    assert not C.same_r_place(C.Irr(Q1.zero(), 1, SQRT2), C.Prin(Q1.zero(), C.PLUS))
    assert C.same_r_place(C.Irr(Q1.zero(), 1, SQRT2), C.Irr(Q1.zero(), 1, SQRT2))
    assert not C.same_r_place(C.Prin(a, C.MINUS), C.Prin(Q1.element(2), C.PLUS))


def test_all_z_cuts_are_ball_cuts():
    for cut in random_cut_corpus(9, 200, 3):
        if all(c == Z for c in cut.group.components) and cut.is_dedekind():
            assert C.signature(cut) != 0


def test_compare_cuts_is_inclusion_order(corpus):
    rng = random.Random(10)
    by_group = {}
    for c in corpus:
        by_group.setdefault(c.group, []).append(c)
    for g, cs in by_group.items():
        for _ in range(30):
            a, b = rng.choice(cs), rng.choice(cs)
            if C.cut_le(a, b):
                for x in sample_elements(rng, g, 20, a):
                    if C.side_of(a, x) == C.LEFT:
                        assert C.side_of(b, x) == C.LEFT


def test_modes_are_reflect_dual():
    rng = random.Random(9)
    cuts = [c for c in cut_corpus(13) if c.is_dedekind()]
    for _ in range(150):
        a = rng.choice(cuts)
        b = rng.choice([c for c in cuts if c.group == a.group])
        dual = C.reflect(C.add_cut(C.reflect(a), C.reflect(b), "left"))
        assert C.cuts_equal(C.add_cut(a, b, "right"), dual)
