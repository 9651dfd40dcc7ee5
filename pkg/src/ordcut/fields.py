"""Valuation-theoretic structure of Q((G)): modules, convex valuation rings,
field cuts, invariance rings and projection of cuts into residue fields.

An O_v-module is ``M_S = {x : v(x) in S}`` for a final segment ``S`` of the
value group; it is stored as the group cut ``segment`` whose upper set is
``S``.  A convex valuation ring is ``O_{G_k} = {x : v(x) >= 0 or v(x) in G_k}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import cuts as C
from .algebraic import AlgebraicReal
from .errors import (CutNotPositive, GroupMismatch, InvalidCut, NotPositiveElement)
from .group import INFINITY, GroupElement, OrderedGroup, Q, nat_val
from .series import (Anchor, Series, TailSeries, in_coarsening, lead_of_difference,
                     residue)

PLUS, MINUS = C.PLUS, C.MINUS
LEFT, RIGHT = C.LEFT, C.RIGHT


def _fmt_exp(g: GroupElement) -> str:
    return "(" + ", ".join(str(c) for c in g.coords) + ")"


# -- modules ----------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleDesc:
    """``M_S`` with ``S`` the upper set of ``segment``."""

    segment: C.Cut

    def __post_init__(self):
        object.__setattr__(self, "segment", C.canonical(self.segment))

    @property
    def group(self) -> OrderedGroup:
        return self.segment.group

    @classmethod
    def zero(cls, group):
        return cls(C.Top(group))

    @classmethod
    def whole(cls, group):
        return cls(C.Bot(group))

    @classmethod
    def valuation_ring(cls, group):
        return cls(C.Prin(group.zero(), MINUS))

    @classmethod
    def above(cls, gamma: GroupElement):
        """``M_{>gamma}``."""
        return cls(C.Prin(gamma, PLUS))

    @classmethod
    def at_least(cls, gamma: GroupElement):
        """``M_{>=gamma}``."""
        return cls(C.Prin(gamma, MINUS))

    def is_zero(self) -> bool:
        return isinstance(self.segment, C.Top)

    def is_whole(self) -> bool:
        return isinstance(self.segment, C.Bot)

    def value_in(self, g) -> bool:
        return g is INFINITY or C.side_of(self.segment, g) == RIGHT

    def contains(self, x: Series) -> bool:
        return self.value_in(x.valuation())

    __contains__ = contains

    def shifted(self, g: GroupElement) -> "ModuleDesc":
        """``t^g * M``."""
        return ModuleDesc(C.shift(self.segment, g))

    def __str__(self):
        return str(self.segment)


def value_cut_to_module(cut: C.Cut) -> ModuleDesc:
    return ModuleDesc(cut)


def module_to_value_cut(m: ModuleDesc) -> C.Cut:
    return m.segment


# -- convex valuation rings -------------------------------------------------------

@dataclass(frozen=True)
class ValuationRingDesc:
    """``O_{G_level}``; ``trivial_invariance`` marks the ring of a cut with 𝒢 = {0}."""

    group: OrderedGroup
    level: int
    trivial_invariance: bool = False

    def __post_init__(self):
        self.group.check_level(self.level)

    def contains(self, b) -> bool:
        return in_coarsening(b, self.level)

    __contains__ = contains

    def in_maximal_ideal(self, b) -> bool:
        v = b.valuation()
        return v is INFINITY or (v.sign() > 0 and nat_val(v) < self.level)

    def residue(self, x):
        if isinstance(x, TailSeries):
            return x.residue(self.level)
        return residue(x, self.level)

    @property
    def residue_group(self) -> OrderedGroup:
        return self.group.tail_group(self.level)

    def is_whole_field(self) -> bool:
        return self.level == 1

    def is_finest(self) -> bool:
        return self.level == self.group.rank + 1

    def __le__(self, other: "ValuationRingDesc") -> bool:
        return self.level >= other.level

    def __lt__(self, other: "ValuationRingDesc") -> bool:
        return self.level > other.level

    def __str__(self):
        return f"O@{self.level}"


# -- field cuts -------------------------------------------------------------------

def _check_anchor(a, group=None):
    if isinstance(a, Series):
        if not a.is_exact():
            raise InvalidCut("cut anchors must be exact series")
    elif not isinstance(a, TailSeries):
        raise InvalidCut(f"not a series anchor: {a!r}")
    if group is not None and a.group != group:
        raise GroupMismatch(f"anchor over {a.group}, expected {group}")


class FieldCut:
    anchor: Anchor
    variant = "?"

    @property
    def group(self) -> OrderedGroup:
        return self.anchor.group


@dataclass(frozen=True)
class PrinF(FieldCut):
    anchor: Anchor
    side: str
    variant = "prinf"

    def __post_init__(self):
        _check_anchor(self.anchor)
        C._check_side(self.side)

    def __str__(self):
        return f"prinf{self.side} {self.anchor}"


@dataclass(frozen=True)
class BallF(FieldCut):
    """``+``: lower set ``{x : x - a in M or x < a}``; ``-``: ``{x : x < a, x - a not in M}``."""

    anchor: Anchor
    module: ModuleDesc
    side: str
    variant = "ballf"

    def __post_init__(self):
        _check_anchor(self.anchor, self.module.group)
        C._check_side(self.side)

    def __str__(self):
        return f"ballf{self.side} {self.anchor} mod {self.module}"


@dataclass(frozen=True)
class IrrF(FieldCut):
    anchor: Series
    gamma: GroupElement
    pivot: AlgebraicReal
    variant = "irrf"

    def __post_init__(self):
        if not isinstance(self.anchor, Series):
            raise InvalidCut("irrational field cuts need a finite anchor")
        _check_anchor(self.anchor)
        if self.gamma.group != self.anchor.group:
            raise GroupMismatch("pivot value in a different group")
        if not isinstance(self.pivot, AlgebraicReal):
            raise InvalidCut("pivot must be an AlgebraicReal")

    def __str__(self):
        return f"irrf {self.anchor} @{_fmt_exp(self.gamma)} {self.pivot}"


def canonical_field_cut(cut: FieldCut) -> FieldCut:
    if isinstance(cut, PrinF):
        if isinstance(cut.anchor, TailSeries):
            # the anchor is not a field element, so both sides give one partition
            return PrinF(cut.anchor, MINUS)
        return cut
    if isinstance(cut, BallF):
        m = cut.module
        if m.is_whole():
            raise InvalidCut("a ball of the whole field has no edge")
        if m.is_zero():
            return canonical_field_cut(PrinF(cut.anchor, cut.side))
        if isinstance(cut.anchor, TailSeries):
            anchor = cut.anchor.drop_segment(m.segment)
        else:
            anchor = cut.anchor.filter(lambda e: C.side_of(m.segment, e) == LEFT)
        return BallF(anchor, m, cut.side)
    if isinstance(cut, IrrF):
        a = cut.anchor
        lower = a.filter(lambda e: e < cut.gamma)
        c = a.coeff(cut.gamma)
        return IrrF(lower, cut.gamma, cut.pivot.add_rational(c))
    raise TypeError(f"not a field cut: {cut!r}")


def field_side_of(cut: FieldCut, x) -> str:
    """``'L'`` or ``'R'`` for an exact series (or limit anchor) ``x``."""
    if x.group != cut.group:
        raise GroupMismatch(f"{x.group} vs {cut.group}")
    lead = lead_of_difference(x, cut.anchor)
    if isinstance(cut, PrinF):
        if lead is None:
            return LEFT if cut.side == PLUS else RIGHT
        return LEFT if lead[1] < 0 else RIGHT
    if isinstance(cut, BallF):
        in_m = lead is None or cut.module.value_in(lead[0])
        neg = lead is not None and lead[1] < 0
        if cut.side == PLUS:
            return LEFT if in_m or neg else RIGHT
        return LEFT if neg and not in_m else RIGHT
    if isinstance(cut, IrrF):
        r = cut.pivot
        if lead is None or lead[0] > cut.gamma:
            return LEFT if r.sign() > 0 else RIGHT
        e, c = lead
        if e == cut.gamma:
            return LEFT if r.cmp_rational(c) > 0 else RIGHT
        return LEFT if c < 0 else RIGHT
    raise TypeError(f"not a field cut: {cut!r}")


def field_cuts_equal(a: FieldCut, b: FieldCut) -> bool:
    if a.group != b.group:
        raise GroupMismatch(f"{a.group} vs {b.group}")
    a, b = canonical_field_cut(a), canonical_field_cut(b)
    if type(a) is not type(b):
        return False
    if isinstance(a, PrinF):
        return a.side == b.side and lead_of_difference(a.anchor, b.anchor) is None
    if isinstance(a, BallF):
        if a.side != b.side or a.module != b.module:
            return False
        lead = lead_of_difference(a.anchor, b.anchor)
        return lead is None or a.module.value_in(lead[0])
    return a.gamma == b.gamma and a.anchor == b.anchor and a.pivot == b.pivot


def is_positive(cut: FieldCut) -> bool:
    return field_side_of(cut, Series.zero(cut.group)) == LEFT


# -- transforms -------------------------------------------------------------------

def shift_field_cut(cut: FieldCut, s: Series) -> FieldCut:
    """Descriptor of ``cut + s``."""
    if isinstance(cut, PrinF):
        return canonical_field_cut(PrinF(cut.anchor + s, cut.side))
    if isinstance(cut, BallF):
        return canonical_field_cut(BallF(cut.anchor + s, cut.module, cut.side))
    return canonical_field_cut(IrrF(cut.anchor + s, cut.gamma, cut.pivot))


def _scale_anchor(a: Anchor, b: Series) -> Anchor:
    if isinstance(a, TailSeries):
        if not b.is_monomial():
            raise InvalidCut("limit anchors scale only by monomials")
        (g, c), = b.terms
        return a.scale_monomial(c, g)
    return a * b


def scale_field_cut(cut: FieldCut, b: Series) -> FieldCut:
    """Descriptor of ``b * cut`` for ``b > 0``."""
    if not b.is_exact() or b.sign() <= 0:
        raise NotPositiveElement(f"{b} is not an exact positive element")
    vb = b.valuation()
    if isinstance(cut, PrinF):
        return canonical_field_cut(PrinF(_scale_anchor(cut.anchor, b), cut.side))
    if isinstance(cut, BallF):
        return canonical_field_cut(BallF(_scale_anchor(cut.anchor, b), cut.module.shifted(vb), cut.side))
    return canonical_field_cut(IrrF(cut.anchor * b, cut.gamma + vb, cut.pivot.mul_rational(b.leading_coefficient())))


# -- invariance -------------------------------------------------------------------

def field_invariance_module(cut: FieldCut) -> ModuleDesc:
    cut = canonical_field_cut(cut)
    if isinstance(cut, PrinF):
        return ModuleDesc.zero(cut.group)
    if isinstance(cut, BallF):
        return cut.module
    return ModuleDesc.above(cut.gamma)


def invariance_valuation_ring(cut: FieldCut) -> ValuationRingDesc:
    """``{b : b 𝒢 ⊆ 𝒢}`` as a coarsening of ``O_v``.

    For 𝒢 = {0} this is the whole field, flagged ``trivial_invariance``.
    """
    m = field_invariance_module(cut)
    return ValuationRingDesc(cut.group, C.invariance_level(m.segment), m.is_zero())


def maximal_ideal_member(cut: FieldCut, b: Series) -> bool:
    """Whether ``b 𝒢 ⊊ 𝒢``."""
    ring = invariance_valuation_ring(cut)
    if ring.trivial_invariance:
        return False
    return ring.in_maximal_ideal(b)


def mult_invariance_member(cut: FieldCut, b: Series) -> bool:
    """Whether ``b * cut^L == cut^L`` for a positive cut and ``b > 0``."""
    if not is_positive(cut):
        raise CutNotPositive(f"{cut} does not contain 0 in its lower set")
    if not b.is_exact() or b.sign() <= 0:
        raise NotPositiveElement(f"{b} is not an exact positive element")
    cut = canonical_field_cut(cut)
    if isinstance(cut.anchor, TailSeries):
        one = Series.constant(cut.group, 1)
        if b == one:
            return True
        if isinstance(cut, PrinF):
            return False
        m = cut.module
        if m.shifted(b.valuation()) != m:
            return False
        return m.value_in((b - one).valuation() + cut.anchor.valuation())
    return field_cuts_equal(scale_field_cut(cut, b), cut)


# -- projection into residue fields ---------------------------------------------

@dataclass(frozen=True)
class Projection:
    ring: ValuationRingDesc
    c: Series
    a: Series
    residue_cut: FieldCut
    projectable = True


@dataclass(frozen=True)
class Unprojectable:
    ring: ValuationRingDesc
    reason: str
    projectable = False


def project_cut(cut: FieldCut, ring: ValuationRingDesc) -> Union[Projection, Unprojectable]:
    """Find ``c > 0`` and ``a`` such that ``c*cut + a`` induces a cut of the residue field."""
    if ring.group != cut.group:
        raise GroupMismatch(f"ring over {ring.group}, cut over {cut.group}")
    cut = canonical_field_cut(cut)
    g = cut.group
    sigma = field_invariance_module(cut).segment
    h = C.invariance_level(sigma)
    j = ring.level
    if j == 1:
        return Projection(ring, Series.constant(g, 1), Series.zero(g), cut)
    if j > h:
        return Unprojectable(ring, f"O@{j} is strictly contained in the invariance ring O@{h}")
    if j == h and not C.is_ball_plus(sigma):
        return Unprojectable(ring, f"the value cut {sigma} of the invariance module is not a ball+ cut")
    tail = ring.residue_group
    if isinstance(cut, IrrF):
        c = Series.monomial(g, 1, -cut.gamma)
        a = -(c * cut.anchor)
        return Projection(ring, c, a, IrrF(Series.zero(tail), tail.zero(), cut.pivot))
    # a ball cut; a principal cut has h == 1 and was handled above
    b = sigma.anchor
    c = Series.monomial(g, 1, -b)
    head = cut.anchor.head if isinstance(cut.anchor, TailSeries) else cut.anchor
    a = -(c * head)
    moved = shift_field_cut(scale_field_cut(cut, c), a)
    res_segment = C.restrict_to_tail(C.shift(sigma, -b), j)
    res_anchor = ring.residue(moved.anchor)
    return Projection(ring, c, a, canonical_field_cut(BallF(res_anchor, ModuleDesc(res_segment), cut.side)))


def residue_cut_side(proj: Projection, cut: FieldCut, x: Series) -> str:
    """Side of ``x`` in ``c*cut + a``, the cut whose trace on O is projected."""
    c_inv = Series.monomial(proj.c.group, 1 / proj.c.leading_coefficient(), -proj.c.valuation())
    return field_side_of(cut, c_inv * (x - proj.a))


def residue_as_group_cut(cut: FieldCut) -> C.Cut:
    """A cut of a residue field with trivial value group, read as a cut of Q."""
    if cut.group.rank != 0:
        raise InvalidCut("only cuts of a rank-0 residue field are cuts of Q")
    q = OrderedGroup.of(Q)
    const = cut.anchor.leading_coefficient() if isinstance(cut.anchor, Series) else Fraction(0)
    if isinstance(cut, PrinF):
        return C.Prin(q.element(const), cut.side)
    if isinstance(cut, IrrF):
        return C.canonical(C.Irr(q.zero(), 1, cut.pivot.add_rational(const)))
    raise InvalidCut(f"{cut} has no counterpart in Q")
