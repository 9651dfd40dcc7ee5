"""Seeded samplers for elements, cuts, series, field cuts and sequences.

Numerators and denominators are bounded by ``BOUND``.  Every sampler takes
an explicit ``random.Random`` so runs are reproducible from a seed.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import List

from . import cuts as C
from .algebraic import AlgebraicReal
from .fields import BallF, IrrF, ModuleDesc, PrinF
from .group import Q, Z, GroupElement, OrderedGroup
from .pcs import PCSeq, TailRule
from .series import Series

BOUND = 100
DEFAULT_SEED = 20240917

EPSILONS = [Fraction(1), Fraction(1, 2), Fraction(1, 10), Fraction(1, 100),
            Fraction(1, 10 ** 4), Fraction(1, 10 ** 6)]
MAGNITUDES = [0, 1, -1, 7, -7, 100, -100, 10 ** 6, -(10 ** 6)]


def pivots() -> List[AlgebraicReal]:
    """√2, √3, √5, 1+√2 and −√2."""
    r2 = AlgebraicReal.sqrt(2)
    return [r2, AlgebraicReal.sqrt(3), AlgebraicReal.sqrt(5), r2.add_rational(1), -r2]


_PIVOTS = None


def fixed_pivots() -> List[AlgebraicReal]:
    global _PIVOTS
    if _PIVOTS is None:
        _PIVOTS = pivots()
    return _PIVOTS


def rand_rational(rng: random.Random, bound: int = BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_coord(rng: random.Random, kind: str, bound: int = BOUND) -> Fraction:
    if rng.random() < 0.3:
        return Fraction(0)
    if kind == Z:
        return Fraction(rng.randint(-bound, bound))
    return rand_rational(rng, bound)


def rand_element(rng: random.Random, group: OrderedGroup, bound: int = BOUND) -> GroupElement:
    return group.element([rand_coord(rng, k, bound) for k in group.components])


def rand_positive(rng: random.Random, group: OrderedGroup) -> GroupElement:
    while True:
        g = rand_element(rng, group)
        if g.sign() > 0:
            return g
        if g.sign() < 0:
            return -g


def rand_in_subgroup(rng: random.Random, group: OrderedGroup, k: int) -> GroupElement:
    """A sample of ``G_k``."""
    coords = [Fraction(0) if i < k - 1 else rand_coord(rng, c) for i, c in enumerate(group.components)]
    return group.element(coords)


def small_steps(group: OrderedGroup, i: int, scale: Fraction = Fraction(1)):
    """Positive multiples of ``e_i`` from coarse to fine."""
    if group.component(i) == Z:
        return [group.unit(i)]
    return [group.unit(i).scale(e * scale) for e in EPSILONS]


def _fill(group, base: List[Fraction], k: int, mags):
    """Variants of ``base`` with coordinates ``>= k`` replaced from ``mags``."""
    n = group.rank
    out = []
    for i in range(k, n + 1):
        for m in mags:
            coords = list(base)
            coords[i - 1] += m
            out.append(group.element(coords))
    out.append(group.element(base))
    return out


def approach(cut: C.Cut, side: str, scale: Fraction = Fraction(1)) -> List[GroupElement]:
    """Elements of the ``side`` set of ``cut`` closing in on the cut from every scale."""
    cut = C.canonical(cut)
    g = cut.group
    n = g.rank
    out: List[GroupElement] = []
    if isinstance(cut, (C.Top, C.Bot)):
        if (side == C.LEFT) == isinstance(cut, C.Top):
            out = _fill(g, [Fraction(0)] * n, 1, MAGNITUDES) if n else [g.zero()]
        return out
    if isinstance(cut, C.Prin):
        a = cut.anchor
        if n == 0:
            return [a] if (side == C.LEFT) == (cut.side == C.PLUS) else []
        if (side == C.LEFT) == (cut.side == C.PLUS):
            out.append(a)
        sgn = -1 if side == C.LEFT else 1
        for i in range(1, n + 1):
            for st in small_steps(g, i, scale):
                bump = a + st.scale(sgn)
                out.extend(_fill(g, list(bump.coords), i + 1, MAGNITUDES[:5]))
        return [x for x in out if C.side_of(cut, x) == side]
    if isinstance(cut, C.Ball):
        a, k = cut.anchor, cut.level
        inside = (side == C.LEFT) == (cut.side == C.PLUS)
        if inside:
            out.extend(_fill(g, list(a.coords), k, MAGNITUDES))
        sgn = -1 if side == C.LEFT else 1
        for i in range(1, k):
            for st in small_steps(g, i, scale):
                bump = a + st.scale(sgn)
                out.extend(_fill(g, list(bump.coords), i + 1, MAGNITUDES[:5]))
        return [x for x in out if C.side_of(cut, x) == side]
    a, k, r = cut.anchor, cut.level, cut.pivot
    for w in EPSILONS + [Fraction(1, 10 ** 9), Fraction(1, 10 ** 12)]:
        rr = r.refined(w * scale)
        q = rr.lo if side == C.LEFT else rr.hi
        coords = list(a.coords)
        coords[k - 1] = q
        out.extend(_fill(g, coords, k + 1, MAGNITUDES[:5]))
    sgn = -1 if side == C.LEFT else 1
    for i in range(1, k):
        for st in small_steps(g, i, scale):
            bump = a + st.scale(sgn)
            out.extend(_fill(g, list(bump.coords), i + 1, MAGNITUDES[:3]))
    return [x for x in out if C.side_of(cut, x) == side]


def sample_elements(rng: random.Random, group: OrderedGroup, n: int, cut: C.Cut = None) -> List[GroupElement]:
    """``n`` elements: random ones mixed with near-boundary ones for ``cut``."""
    near: List[GroupElement] = []
    if cut is not None:
        near = approach(cut, C.LEFT) + approach(cut, C.RIGHT)
    out = []
    for i in range(n):
        if near and i % 2 == 0:
            out.append(rng.choice(near))
        else:
            out.append(rand_element(rng, group))
    return out


def rand_pivot(rng: random.Random) -> AlgebraicReal:
    r = rng.choice(fixed_pivots())
    if rng.random() < 0.3:
        r = r.add_rational(rng.randint(-3, 3))
    return r


def rand_cut(rng: random.Random, group: OrderedGroup, allow_edges: bool = False) -> C.Cut:
    n = group.rank
    kinds = ["prin", "ball"]
    q_levels = [i for i in range(1, n + 1) if group.component(i) == Q]
    if q_levels:
        kinds.append("irr")
    if allow_edges:
        kinds.append("edge")
    kind = rng.choice(kinds)
    a = rand_element(rng, group, 10)
    side = rng.choice([C.PLUS, C.MINUS])
    if kind == "prin" or n == 0:
        return C.canonical(C.Prin(a, side)) if n else C.Top(group)
    if kind == "ball":
        return C.canonical(C.Ball(a, rng.randint(2, n + 1) if n >= 1 else 1, side))
    if kind == "irr":
        return C.canonical(C.Irr(a, rng.choice(q_levels), rand_pivot(rng)))
    return rng.choice([C.Top(group), C.Bot(group)])


def all_groups(max_rank: int = 3, min_rank: int = 1) -> List[OrderedGroup]:
    out = []
    for n in range(min_rank, max_rank + 1):
        for comps in itertools.product((Z, Q), repeat=n):
            out.append(OrderedGroup(comps))
    return out


def exhaustive_cuts(group: OrderedGroup) -> List[C.Cut]:
    """A small structured family: every variant at every admissible level."""
    n = group.rank
    a = group.element([Fraction(i + 1) for i in range(n)])
    out = [C.Top(group), C.Bot(group)]
    for s in (C.PLUS, C.MINUS):
        out.append(C.canonical(C.Prin(group.zero(), s)))
        out.append(C.canonical(C.Prin(a, s)))
        for k in range(2, n + 1):
            out.append(C.canonical(C.Ball(group.zero(), k, s)))
            out.append(C.canonical(C.Ball(a, k, s)))
    for k in range(1, n + 1):
        if group.component(k) == Q:
            out.append(C.canonical(C.Irr(a, k, fixed_pivots()[0])))
    return out


def cut_corpus(seed: int = DEFAULT_SEED, per_group: int = 3, max_rank: int = 3) -> List[C.Cut]:
    """Structured cuts over every Z/Q group of rank 1..max_rank plus random ones."""
    rng = random.Random(seed)
    out: List[C.Cut] = []
    for g in all_groups(max_rank):
        out.extend(exhaustive_cuts(g))
        for _ in range(per_group):
            out.append(rand_cut(rng, g))
    return _dedupe(out)


def random_cut_corpus(seed: int, count: int, rank: int) -> List[C.Cut]:
    rng = random.Random(seed)
    groups = [g for g in all_groups(rank, rank)] if rank >= 1 else [OrderedGroup(())]
    return [rand_cut(rng, rng.choice(groups), allow_edges=True) for _ in range(count)]


def _dedupe(cuts):
    seen, out = set(), []
    for c in cuts:
        key = (c.group, str(c))
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


# -- series -----------------------------------------------------------------------

def rand_exponent(rng: random.Random, group: OrderedGroup, bound: int = 3) -> GroupElement:
    coords = []
    for kind in group.components:
        if rng.random() < 0.4:
            coords.append(Fraction(0))
        elif kind == Z:
            coords.append(Fraction(rng.randint(-bound, bound)))
        else:
            coords.append(Fraction(rng.randint(-2 * bound, 2 * bound), 2))
    return group.element(coords)


def rand_series(rng: random.Random, group: OrderedGroup, max_terms: int = 4, nonzero: bool = False) -> Series:
    while True:
        terms = [(rand_exponent(rng, group), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
                 for _ in range(rng.randint(0, max_terms))]
        x = Series(group, terms)
        if x.terms or not nonzero:
            return x


def rand_positive_series(rng: random.Random, group: OrderedGroup) -> Series:
    x = rand_series(rng, group, nonzero=True)
    return x if x.sign() > 0 else -x


def series_near(rng: random.Random, anchor: Series, group: OrderedGroup, values) -> List[Series]:
    """Anchor perturbed by ``+-c t^v`` at the given values, plus random noise above."""
    out = [anchor]
    for v in values:
        for c in (1, -1, Fraction(1, 3), -7):
            out.append(anchor + Series.monomial(group, c, v))
            noise = rand_series(rng, group, 2)
            noise = noise.filter(lambda e, v=v: e > v)
            out.append(anchor + Series.monomial(group, c, v) + noise)
    return out


# -- field cuts -------------------------------------------------------------------

def field_groups(max_rank: int = 3) -> List[OrderedGroup]:
    return all_groups(max_rank)


def rand_module_segment(rng: random.Random, group: OrderedGroup) -> C.Cut:
    while True:
        c = rand_cut(rng, group)
        if c.is_dedekind():
            return c


def rand_field_cut(rng: random.Random, group: OrderedGroup):
    a = rand_series(rng, group, 3)
    kind = rng.choice(["prin", "ball", "ball", "irr"])
    side = rng.choice([C.PLUS, C.MINUS])
    if kind == "prin":
        return PrinF(a, side)
    if kind == "ball":
        return BallF(a, ModuleDesc(rand_module_segment(rng, group)), side)
    return IrrF(a, rand_exponent(rng, group), rand_pivot(rng))


def field_cut_corpus(seed: int = DEFAULT_SEED, per_group: int = 3, max_rank: int = 3):
    """Structured field cuts over every value group of rank 1..max_rank."""
    from .fields import canonical_field_cut
    rng = random.Random(seed)
    out = []
    for g in field_groups(max_rank):
        zero = Series.zero(g)
        one = Series.constant(g, 1)
        out.append(PrinF(one, C.PLUS))
        out.append(IrrF(zero, g.zero(), fixed_pivots()[0]))
        for k in range(2, g.rank + 2):
            for s in (C.PLUS, C.MINUS):
                seg = C.canonical(C.Ball(g.zero(), k, s))
                if seg.is_dedekind():
                    out.append(BallF(zero, ModuleDesc(seg), C.PLUS))
                    out.append(BallF(one, ModuleDesc(seg), C.MINUS))
        for _ in range(per_group):
            out.append(rand_field_cut(rng, g))
    return [canonical_field_cut(c) for c in out]


# -- sequences --------------------------------------------------------------------

def rand_pcs(rng: random.Random, group: OrderedGroup, increasing: bool = True) -> PCSeq:
    """A valid tail-rule sequence with a short random prefix."""
    length = rng.randint(1, 3)
    vals = sorted({rand_exponent(rng, group) for _ in range(length - 1)})
    a = [rand_series(rng, group, 2)]
    for v in vals:
        c = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        if not increasing and rng.random() < 0.5:
            c = -c
        junk = rand_series(rng, group, 1).filter(lambda e, v=v: e > v)
        a.append(a[-1] + Series.monomial(group, c, v) + junk)
    step = rand_positive(rng, group)
    if rng.random() < 0.5:
        # favour archimedean-small steps so that breadths are often nontrivial
        k = rng.randint(1, group.rank)
        step = group.unit(k).scale(rng.randint(1, 3))
    start = None
    if rng.random() < 0.4 or not vals:
        base = vals[-1] if vals else rand_exponent(rng, group)
        start = base + rand_positive(rng, group) if vals else base
    pre = tuple(Fraction(rng.randint(1, 5)) for _ in range(rng.randint(0, 2)))
    rep = tuple(Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(rng.randint(1, 2)))
    if not increasing:
        rep = tuple(-c if rng.random() < 0.5 else c for c in rep)
    if pre:
        rule = TailRule(step, pre, rep, start)
    else:
        rule = TailRule(step, rep, (), start)
    return PCSeq(group, tuple(a), rule)


def pcs_corpus(seed: int = DEFAULT_SEED, count: int = 50, max_rank: int = 2) -> List[PCSeq]:
    from .pcs import validate_pcs
    rng = random.Random(seed)
    groups = all_groups(max_rank)
    out = []
    while len(out) < count:
        s = rand_pcs(rng, rng.choice(groups))
        if validate_pcs(s):
            out.append(s)
    return out
