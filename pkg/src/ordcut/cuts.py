"""Symbolic cuts in a finite-rank lexicographic group and their classification.

Every Dedekind cut handled here is one of

* ``Prin(a, +)`` = a+ and ``Prin(a, -)`` = a-,
* ``Ball(a, k, s)`` = the upper (``+``) or lower (``-``) edge of ``a + G_k``,
* ``Irr(a, k, r)``: lower set ``{g : prefix_k(g) < prefix_k(a)}`` together with
  ``{g : prefix_k(g) = prefix_k(a), g_k < a_k + r}`` for an irrational ``r``
  (component ``k`` must be Q),

plus the two non-Dedekind cuts ``Top = (G, {})`` and ``Bot = ({}, G)``.
``prefix_k`` means coordinates ``1..k-1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .algebraic import AlgebraicReal, add_alg
from .errors import (GroupMismatch, InvalidCut, InvalidLevel, NotCoarseEnough,
                     NotDedekind, TrivialQuotient)
from .group import (Q, Z, ConvexSubgroup, GroupElement, OrderedGroup, Order,
                    nat_val)

PLUS = "+"
MINUS = "-"
LEFT = "L"
RIGHT = "R"


def _check_side(side: str) -> str:
    if side not in (PLUS, MINUS):
        raise InvalidCut(f"side must be '+' or '-', got {side!r}")
    return side


def _fmt_elt(g: GroupElement) -> str:
    return "(" + ", ".join(str(c) for c in g.coords) + ")"


class Cut:
    """Base class of the cut descriptors."""

    group: OrderedGroup
    variant: str = "?"

    def is_dedekind(self) -> bool:
        return True


@dataclass(frozen=True)
class Top(Cut):
    group: OrderedGroup
    variant = "top"

    def is_dedekind(self):
        return False

    def __str__(self):
        return "top"


@dataclass(frozen=True)
class Bot(Cut):
    group: OrderedGroup
    variant = "bot"

    def is_dedekind(self):
        return False

    def __str__(self):
        return "bot"


@dataclass(frozen=True)
class Prin(Cut):
    anchor: GroupElement
    side: str
    variant = "prin"

    def __post_init__(self):
        _check_side(self.side)

    @property
    def group(self):
        return self.anchor.group

    def __str__(self):
        return f"prin{self.side} {_fmt_elt(self.anchor)}"


@dataclass(frozen=True)
class Ball(Cut):
    anchor: GroupElement
    level: int
    side: str
    variant = "ball"

    def __post_init__(self):
        _check_side(self.side)
        self.anchor.group.check_level(self.level)

    @property
    def group(self):
        return self.anchor.group

    def __str__(self):
        return f"ball{self.side} {_fmt_elt(self.anchor)} @{self.level}"


@dataclass(frozen=True)
class Irr(Cut):
    anchor: GroupElement
    level: int
    pivot: AlgebraicReal
    variant = "irr"

    def __post_init__(self):
        g = self.anchor.group
        if not isinstance(self.level, int) or not 1 <= self.level <= g.rank:
            raise InvalidLevel(f"irrational level {self.level} outside 1..{g.rank}")
        if g.component(self.level) != Q:
            raise InvalidCut(f"component {self.level} of {g} is Z; irrational pivots need Q")
        if not isinstance(self.pivot, AlgebraicReal):
            raise InvalidCut("pivot must be an AlgebraicReal")

    @property
    def group(self):
        return self.anchor.group

    def __str__(self):
        return f"irr {_fmt_elt(self.anchor)} @{self.level} {self.pivot}"


CutLike = Union[Top, Bot, Prin, Ball, Irr]


def _same_group(a: Cut, g: GroupElement):
    if g.group is not a.group and g.group != a.group:
        raise GroupMismatch(f"element of {g.group} against a cut in {a.group}")


def _require_dedekind(*cuts: Cut):
    for c in cuts:
        if not c.is_dedekind():
            raise NotDedekind(f"{c} is not a Dedekind cut")


# -- membership ---------------------------------------------------------------

def side_of(cut: Cut, g: GroupElement) -> str:
    """``'L'`` if ``g`` lies in the lower cut set, else ``'R'``."""
    _same_group(cut, g)
    if isinstance(cut, Top):
        return LEFT
    if isinstance(cut, Bot):
        return RIGHT
    if isinstance(cut, Prin):
        x, a = g.coords, cut.anchor.coords
        below = x < a or (x == a and cut.side == PLUS)
        return LEFT if below else RIGHT
    if isinstance(cut, Ball):
        pg, pa = g.prefix(cut.level), cut.anchor.prefix(cut.level)
        below = pg < pa or (pg == pa and cut.side == PLUS)
        return LEFT if below else RIGHT
    if isinstance(cut, Irr):
        k = cut.level
        pg, pa = g.prefix(k), cut.anchor.prefix(k)
        if pg != pa:
            return LEFT if pg < pa else RIGHT
        # g_k < a_k + r  <=>  r > g_k - a_k
        return LEFT if cut.pivot.cmp_rational(g[k] - cut.anchor[k]) is Order.GT else RIGHT
    raise TypeError(f"not a cut: {cut!r}")


# -- canonical forms ------------------------------------------------------------

def canonical(cut: Cut) -> Cut:
    """Unique descriptor for the partition ``cut`` defines."""
    g = cut.group
    n = g.rank
    if isinstance(cut, (Top, Bot)):
        return cut
    if isinstance(cut, Irr):
        k = cut.level
        shift = cut.anchor[k]
        return Irr(cut.anchor.truncate(k), k, cut.pivot.add_rational(shift))
    if isinstance(cut, Prin):
        a, k, side = cut.anchor, n + 1, cut.side
    elif isinstance(cut, Ball):
        a, k, side = cut.anchor, cut.level, cut.side
    else:
        raise TypeError(f"not a cut: {cut!r}")
    if k == 1:
        return Top(g) if side == PLUS else Bot(g)
    a = a.truncate(k) if k <= n else a
    if side == MINUS and g.component(k - 1) == Z:
        a, side = a - g.unit(k - 1), PLUS
    if k == n + 1:
        return Prin(a, side)
    return Ball(a, k, side)


def cuts_equal(a: Cut, b: Cut) -> bool:
    if a.group != b.group:
        raise GroupMismatch(f"{a.group} vs {b.group}")
    return canonical(a) == canonical(b)


def cut_from_singleton(a: GroupElement, side: str) -> Cut:
    return Prin(a, _check_side(side))


def cut_from_coset(a: GroupElement, k: int, side: str) -> Cut:
    """Canonical edge ``(a + G_k)^side``."""
    a.group.check_level(k)
    return canonical(Ball(a, k, _check_side(side)))


def top(group: OrderedGroup) -> Top:
    return Top(group)


def bot(group: OrderedGroup) -> Bot:
    return Bot(group)


# -- invariance group, signature, group cuts ------------------------------------

def invariance_level(cut: Cut) -> int:
    cut = canonical(cut)
    n = cut.group.rank
    if isinstance(cut, (Top, Bot)):
        return 1
    if isinstance(cut, Prin):
        return n + 1
    if isinstance(cut, Ball):
        return cut.level
    return cut.level + 1


def invariance_group(cut: Cut) -> ConvexSubgroup:
    return ConvexSubgroup(cut.group, invariance_level(cut))


def _level_anchor_side(cut: Cut):
    """``(k, anchor, side)`` for a canonical ball or principal cut."""
    if isinstance(cut, Prin):
        return cut.group.rank + 1, cut.anchor, cut.side
    return cut.level, cut.anchor, cut.side


def edge_representations(cut: Cut) -> List[Tuple[GroupElement, int, str]]:
    """Every ``(c, k, s)`` (``c`` reduced mod ``G_k``) with ``cut == (c + G_k)^s``.

    ``k`` is always the invariance level; an edge of a coset of any other
    convex subgroup has a different invariance group.
    """
    cut = canonical(cut)
    g = cut.group
    if isinstance(cut, Top):
        return [(g.zero(), 1, PLUS)]
    if isinstance(cut, Bot):
        return [(g.zero(), 1, MINUS)]
    if isinstance(cut, Irr):
        return []
    k, a, side = _level_anchor_side(cut)
    reps = [(a, k, side)]
    if side == PLUS and g.component(k - 1) == Z:
        reps.append((a + g.unit(k - 1), k, MINUS))
    return reps


def signature(cut: Cut) -> int:
    _require_dedekind(cut)
    cut = canonical(cut)
    if isinstance(cut, Irr):
        return 0
    return 1 if cut.side == PLUS else -1


def both_edges(cut: Cut) -> bool:
    """True when the cut is a ball+-cut and a ball--cut at once."""
    sides = {s for _, _, s in edge_representations(cut)}
    return sides == {PLUS, MINUS}


def is_ball_plus(cut: Cut) -> bool:
    return any(s == PLUS for _, _, s in edge_representations(cut))


def is_group_cut(cut: Cut) -> bool:
    return any(c.is_zero() for c, _, _ in edge_representations(cut))


def ball_witness(cut: Cut) -> Optional[Tuple[GroupElement, str]]:
    """An anchor ``g`` and side with ``cut == (g + G(cut))^side``, if one exists."""
    reps = edge_representations(cut)
    if not reps:
        return None
    c, _, s = reps[0]
    return c, s


# -- transforms -----------------------------------------------------------------

def shift(cut: Cut, h: GroupElement) -> Cut:
    """Descriptor of ``(cut^L + h, cut^R + h)``."""
    _same_group(cut, h)
    if isinstance(cut, (Top, Bot)):
        return cut
    if isinstance(cut, Prin):
        return canonical(Prin(cut.anchor + h, cut.side))
    if isinstance(cut, Ball):
        return canonical(Ball(cut.anchor + h, cut.level, cut.side))
    return canonical(Irr(cut.anchor + h, cut.level, cut.pivot))


def reflect(cut: Cut) -> Cut:
    """Descriptor of ``(-cut^R, -cut^L)``."""
    if isinstance(cut, Top):
        return Bot(cut.group)
    if isinstance(cut, Bot):
        return Top(cut.group)
    if isinstance(cut, Prin):
        return canonical(Prin(-cut.anchor, MINUS if cut.side == PLUS else PLUS))
    if isinstance(cut, Ball):
        return canonical(Ball(-cut.anchor, cut.level, MINUS if cut.side == PLUS else PLUS))
    cut = canonical(cut)
    return canonical(Irr(-cut.anchor, cut.level, -cut.pivot))


def transform(cut: Cut, kind: str, h: Optional[GroupElement] = None) -> Cut:
    if kind == "shift":
        return shift(cut, h)
    if kind == "reflect":
        return reflect(cut)
    raise ValueError(f"unknown transform {kind!r}")


# -- monoid addition ------------------------------------------------------------

def _anchor(cut: Cut) -> GroupElement:
    return cut.anchor


def add_cut(c1: Cut, c2: Cut, mode: str = "left") -> Cut:
    """``(c1^L + c2^L)^+`` for ``mode='left'``, ``(c1^R + c2^R)^-`` for ``'right'``."""
    if c1.group != c2.group:
        raise GroupMismatch(f"{c1.group} vs {c2.group}")
    if mode not in ("left", "right"):
        raise ValueError(f"mode must be 'left' or 'right', got {mode!r}")
    _require_dedekind(c1, c2)
    c1, c2 = canonical(c1), canonical(c2)
    m1, m2 = invariance_level(c1), invariance_level(c2)
    # the coarser cut absorbs the finer one up to a translation by its anchor
    if m1 < m2:
        return shift(c1, _anchor(c2))
    if m2 < m1:
        return shift(c2, _anchor(c1))
    g = c1.group
    irr1, irr2 = isinstance(c1, Irr), isinstance(c2, Irr)
    if irr1 and irr2:
        k = c1.level
        total = add_alg(c1.pivot, c2.pivot)
        base = c1.anchor + c2.anchor
        if isinstance(total, AlgebraicReal):
            return canonical(Irr(base, k, total))
        point = base + g.unit(k).scale(total)
        return canonical(Ball(point, k + 1, MINUS if mode == "left" else PLUS))
    if irr1:
        return shift(c1, c2.anchor)
    if irr2:
        return shift(c2, c1.anchor)
    m = m1
    (a1, s1), (a2, s2) = _edge_form(c1, m, mode), _edge_form(c2, m, mode)
    if mode == "left":
        side = PLUS if s1 == s2 == PLUS else MINUS
    else:
        side = MINUS if s1 == s2 == MINUS else PLUS
    return canonical(Ball(a1 + a2, m, side))


def _edge_form(cut: Cut, m: int, mode: str):
    """Anchor and side at level ``m``, preferring the side native to ``mode``."""
    _, a, side = _level_anchor_side(cut)
    g = cut.group
    if mode == "right" and side == PLUS and g.component(m - 1) == Z:
        return a + g.unit(m - 1), MINUS
    return a, side


def is_idempotent(cut: Cut, mode: str) -> bool:
    return cuts_equal(add_cut(cut, cut, mode), cut)


def neutral(group: OrderedGroup, mode: str) -> Cut:
    return canonical(Prin(group.zero(), PLUS if mode == "left" else MINUS))


# -- quotients and restrictions -------------------------------------------------

def _subgroup(cut: Cut, H) -> ConvexSubgroup:
    if isinstance(H, int):
        H = ConvexSubgroup(cut.group, H)
    if H.group != cut.group:
        raise GroupMismatch(f"subgroup of {H.group} against a cut in {cut.group}")
    return H


def quotient_cut(cut: Cut, H) -> Cut:
    """The induced cut ``cut / H`` in ``G / H``."""
    _require_dedekind(cut)
    H = _subgroup(cut, H)
    j = H.level
    if j == 1:
        raise TrivialQuotient("quotient by the whole group")
    cut = canonical(cut)
    if invariance_level(cut) > j:
        raise NotCoarseEnough(f"{H} is not contained in the invariance group of {cut}")
    if isinstance(cut, Prin):
        return cut
    if isinstance(cut, Ball):
        return canonical(Ball(cut.anchor.project(j), cut.level, cut.side))
    return canonical(Irr(cut.anchor.project(j), cut.level, cut.pivot))


def restrict_to_subgroup(cut: Cut, j: int) -> Cut:
    """``(cut^L & G_j, cut^R & G_j)`` as a cut of the re-indexed tail group."""
    g = cut.group
    g.check_level(j)
    sub = g.tail_group(j)
    cut = canonical(cut)
    if isinstance(cut, (Top, Bot)):
        return Top(sub) if isinstance(cut, Top) else Bot(sub)
    if isinstance(cut, Irr):
        k = cut.level
    else:
        k, _, _ = _level_anchor_side(cut)
    a = cut.anchor
    for i in range(1, min(k, j)):
        if a[i]:
            return Top(sub) if a[i] > 0 else Bot(sub)
    if isinstance(cut, Irr):
        if k < j:
            return Top(sub) if cut.pivot.sign() > 0 else Bot(sub)
        return canonical(Irr(a.tail(j), k - j + 1, cut.pivot))
    if k <= j:
        return Top(sub) if cut.side == PLUS else Bot(sub)
    if isinstance(cut, Prin):
        return canonical(Prin(a.tail(j), cut.side))
    return canonical(Ball(a.tail(j), k - j + 1, cut.side))


# -- cofinality -----------------------------------------------------------------

class Card(str, enum.Enum):
    ONE = "1"
    ALEPH0 = "aleph0"


@dataclass(frozen=True)
class Cofinality:
    left: Card
    right: Card

    def as_list(self):
        return [self.left.value, self.right.value]

    def swapped(self) -> "Cofinality":
        return Cofinality(self.right, self.left)


def cofinality(cut: Cut) -> Cofinality:
    """Cofinality of the lower set and coinitiality of the upper set."""
    _require_dedekind(cut)
    cut = canonical(cut)
    if isinstance(cut, Prin):
        g = cut.group
        dense_last = g.component(g.rank) == Q
        if cut.side == PLUS:
            return Cofinality(Card.ONE, Card.ALEPH0 if dense_last else Card.ONE)
        return Cofinality(Card.ALEPH0, Card.ONE)
    return Cofinality(Card.ALEPH0, Card.ALEPH0)


def is_symmetric(cut: Cut) -> bool:
    c = cofinality(cut)
    return c.left == c.right


def is_jump(cut: Cut) -> bool:
    return cofinality(cut) == Cofinality(Card.ONE, Card.ONE)


# -- R-places -------------------------------------------------------------------

def same_r_place(c1: Cut, c2: Cut) -> bool:
    """Equal, or the two edges of one ball ``c + H``."""
    if c1.group != c2.group:
        raise GroupMismatch(f"{c1.group} vs {c2.group}")
    _require_dedekind(c1, c2)
    if cuts_equal(c1, c2):
        return True
    for a, k, s in edge_representations(c1):
        for b, m, t in edge_representations(c2):
            if k == m and s != t and (a - b).truncate(k).is_zero():
                return True
    return False


# -- progressions ---------------------------------------------------------------

def progression_cut(start: GroupElement, step: GroupElement) -> Cut:
    """``{start + i*step : i >= 0}^+`` for a positive ``step``."""
    if start.group != step.group:
        raise GroupMismatch(f"{start.group} vs {step.group}")
    if step.sign() <= 0:
        raise InvalidCut("progression step must be positive")
    return cut_from_coset(start, nat_val(step), PLUS)


restrict_to_tail = restrict_to_subgroup


# -- comparing cuts -------------------------------------------------------------

def _cut_key(cut: Cut):
    """Lexicographic position of a canonical cut among all cuts.

    Entries are ``(0, q)`` for an exact rational coordinate and
    ``(1, x)`` for a terminal entry: ``+-inf`` (ball edges, Top/Bot),
    ``+-eps`` (principal cuts) or an algebraic pivot.
    """
    cut = canonical(cut)
    if isinstance(cut, Top):
        return [], ("inf", 1)
    if isinstance(cut, Bot):
        return [], ("inf", -1)
    if isinstance(cut, Prin):
        return list(cut.anchor.coords), ("eps", 1 if cut.side == PLUS else -1)
    if isinstance(cut, Ball):
        return list(cut.anchor.prefix(cut.level)), ("inf", 1 if cut.side == PLUS else -1)
    return list(cut.anchor.prefix(cut.level)), ("alg", cut.pivot)


def _cmp_terminal_vs_number(term, q) -> int:
    kind, x = term
    if kind == "inf":
        return x
    if kind == "alg":
        return int(x.cmp_rational(q))
    raise AssertionError("principal terminal sits after every coordinate")


def compare_cuts(a: Cut, b: Cut) -> Order:
    """Order of ``a^L`` and ``b^L`` under inclusion (cuts form a chain)."""
    if a.group != b.group:
        raise GroupMismatch(f"{a.group} vs {b.group}")
    pa, ta = _cut_key(a)
    pb, tb = _cut_key(b)
    for x, y in zip(pa, pb):
        if x != y:
            return Order.LT if x < y else Order.GT
    if len(pa) < len(pb):
        return Order(_cmp_terminal_vs_number(ta, pb[len(pa)]))
    if len(pb) < len(pa):
        return Order(-_cmp_terminal_vs_number(tb, pa[len(pb)]))
    (ka, xa), (kb, xb) = ta, tb
    if ka == "alg" and kb == "alg":
        from .algebraic import cmp_alg
        return cmp_alg(xa, xb)
    rank = {"inf": 2, "eps": 1}
    va = xa * rank[ka] if ka != "alg" else None
    vb = xb * rank[kb] if kb != "alg" else None
    if va is None:
        return Order.LT if vb > 0 else Order.GT
    if vb is None:
        return Order.GT if va > 0 else Order.LT
    return Order((va > vb) - (va < vb))


def cut_le(a: Cut, b: Cut) -> bool:
    return compare_cuts(a, b) is not Order.GT
