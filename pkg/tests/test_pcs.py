import random

import pytest

from ordcut import cuts as C
from ordcut import fields as F
from ordcut.errors import FiniteSequence, NotIncreasing
from ordcut.group import Q, Z, OrderedGroup
from ordcut.pcs import (PCSeq, TailRule, breadth, cut_of_pcs, is_limit,
                        validate_pcs)
from ordcut.sampling import pcs_corpus, rand_series
from ordcut.series import Series

Z1, Z2, Q1 = OrderedGroup.of(Z), OrderedGroup.of(Z, Z), OrderedGroup.of(Q)


def t(group, *coords, c=1):
    return Series.monomial(group, c, group.element(*coords))


def geometric(group, step, start=None):
    """``a_nu = sum_{i<nu} t^(start + i*step)``."""
    start = group.zero() if start is None else start
    return PCSeq(group, (Series.zero(group),), TailRule(step, (1,), (), start))


def test_validate_examples():
    assert validate_pcs(geometric(Z1, Z1.element(1)))
    zero, one = Series.zero(Z1), Series.constant(Z1, 1)
    bad = validate_pcs(PCSeq(Z1, (zero, one, one)))
    assert not bad and bad.witness == (0, 1, 2)
    s = PCSeq(Z1, (zero, t(Z1, 1), t(Z1, 1) + t(Z1, 3)), TailRule(Z1.element(1), (1,)))
    assert validate_pcs(s)
    assert [s.value(i) for i in range(4)] == [Z1.element(v) for v in (1, 3, 4, 5)]


def test_breadth_examples():
    assert breadth(geometric(Z1, Z1.element(1))).is_zero()
    b = breadth(geometric(Z2, Z2.element(0, 1)))
    assert b == F.ModuleDesc(C.Ball(Z2.zero(), 2, C.PLUS))
    assert b.contains(t(Z2, 1, -7)) and not b.contains(t(Z2, 0, 10 ** 6))
    assert breadth(geometric(Q1, Q1.element(1))).is_zero()


def test_breadth_rejects_finite_sequences():
    with pytest.raises(FiniteSequence):
        breadth(PCSeq(Z1, (Series.zero(Z1), t(Z1, 1))))


def test_is_limit_examples():
    s = geometric(Z1, Z1.element(1))
    x = sum((t(Z1, i) for i in range(5)), Series.zero(Z1))
    assert not is_limit(x, s)
    finite = PCSeq(Z1, (Series.zero(Z1), t(Z1, 1)))
    assert is_limit(t(Z1, 1) + t(Z1, 5), finite)


def test_limits_differ_by_breadth():
    s = geometric(Z2, Z2.element(0, 1))
    rng = random.Random(3)
    shift = t(Z2, 1, 0)
    for _ in range(100):
        x = rand_series(rng, Z2)
        assert is_limit(x, s) == is_limit(x + shift, s)
    # a breadth element alone is no limit: v(x - a_0) = (1, 0) but v(a_1 - a_0) = 0
    assert not is_limit(shift, s)


def test_cut_of_pcs_examples():
    s = geometric(Z2, Z2.element(0, 1))
    cut = cut_of_pcs(s)
    assert isinstance(cut, F.BallF)
    assert F.field_invariance_module(cut) == breadth(s)
    s1 = geometric(Z1, Z1.element(1))
    assert F.field_invariance_module(cut_of_pcs(s1)).is_zero() and breadth(s1).is_zero()
    down = PCSeq(Z1, (Series.zero(Z1), t(Z1, 1, c=-1)), TailRule(Z1.element(1), (1,)))
    with pytest.raises(NotIncreasing):
        cut_of_pcs(down)


def test_invariance_equals_breadth_on_corpus():
    corpus = [s for s in pcs_corpus(7, 80) if all(c > 0 for c in s.tail.coeffs + s.tail.repeat)
              and all(a < b for a, b in zip(s.prefix, s.prefix[1:]))]
    assert len(corpus) >= 20
    for s in corpus:
        assert F.field_invariance_module(cut_of_pcs(s)) == breadth(s)


def test_limit_uniqueness_modulo_breadth():
    rng = random.Random(5)
    for s in pcs_corpus(9, 30):
        m = breadth(s)
        anchor = s.limit_anchor()
        # truncations of the limit anchor are candidates; so are random series
        cands = [anchor.partial(n) for n in (0, 3, 8)] + [rand_series(rng, s.group) for _ in range(10)]
        limits = [x for x in cands if is_limit(x, s)]
        for x in limits:
            for y in limits:
                assert m.contains(x - y)
        extra = [y for y in (rand_series(rng, s.group, nonzero=True) for _ in range(20)) if m.contains(y)]
        for x in cands:
            for b in extra:
                assert is_limit(x + b, s) == is_limit(x, s)


def test_no_limits_in_finite_support_series_over_z():
    rng = random.Random(8)
    s = geometric(Z1, Z1.element(1))
    anchor = s.limit_anchor()
    cands = [anchor.partial(n) for n in range(50)] + [rand_series(rng, Z1) for _ in range(50)]
    assert not any(is_limit(x, s) for x in cands)
