"""Finite-rank lexicographic products of Z and Q.

Coordinate 1 is the most significant.  The convex subgroups of such a group
are exactly the tails ``G_k = {g : g_j = 0 for j < k}``, ``1 <= k <= n + 1``.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Tuple

from .errors import GroupMismatch, InvalidLevel

Z = "Z"
Q = "Q"


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@functools.total_ordering
class _Infinity:
    """The value of zero: larger than every level and every group element."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("ordcut.infinity")

    def __repr__(self):
        return "INFINITY"

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class OrderedGroup:
    """A lexicographic product ``C_1 x ... x C_n`` with ``C_i`` in {Z, Q}."""

    components: Tuple[str, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        for c in comps:
            if c not in (Z, Q):
                raise ValueError(f"component must be 'Z' or 'Q', got {c!r}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def of(cls, *components: str) -> "OrderedGroup":
        return cls(tuple(components))

    @property
    def rank(self) -> int:
        return len(self.components)

    def component(self, i: int) -> str:
        """Kind of component ``i`` (1-based)."""
        return self.components[i - 1]

    def element(self, *coords) -> "GroupElement":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = tuple(coords[0])
        return GroupElement(self, tuple(as_fraction(c) for c in coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (Fraction(0),) * self.rank)

    def unit(self, i: int) -> "GroupElement":
        """The element with a single 1 in coordinate ``i``."""
        coords = [Fraction(0)] * self.rank
        coords[i - 1] = Fraction(1)
        return GroupElement(self, tuple(coords))

    def check_level(self, k: int) -> int:
        if not isinstance(k, int) or not 1 <= k <= self.rank + 1:
            raise InvalidLevel(f"level {k} outside 1..{self.rank + 1}")
        return k

    def convex_subgroup(self, k: int) -> "ConvexSubgroup":
        return ConvexSubgroup(self, self.check_level(k))

    def convex_subgroups(self):
        return [ConvexSubgroup(self, k) for k in range(1, self.rank + 2)]

    def quotient(self, k: int) -> "OrderedGroup":
        """``G / G_k``, presented on the first ``k - 1`` components."""
        self.check_level(k)
        return OrderedGroup(self.components[: k - 1])

    def tail_group(self, k: int) -> "OrderedGroup":
        """``G_k`` re-indexed as a group of rank ``n - k + 1``."""
        self.check_level(k)
        return OrderedGroup(self.components[k - 1:])

    def is_discrete_at(self, i: int) -> bool:
        return self.components[i - 1] == Z

    def __str__(self):
        return " lex ".join(self.components) if self.components else "0"


def _add_coord(x: Fraction, y: Fraction) -> Fraction:
    if not y:
        return x
    if not x:
        return y
    return x + y


def _sub_coord(x: Fraction, y: Fraction) -> Fraction:
    return x if not y else x - y


@functools.total_ordering
@dataclass(frozen=True)
class GroupElement:
    group: OrderedGroup
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(as_fraction(c) for c in self.coords)
        if len(coords) != self.group.rank:
            raise GroupMismatch(
                f"{len(coords)} coordinates for a group of rank {self.group.rank}")
        for kind, c in zip(self.group.components, coords):
            if kind == Z and c.denominator != 1:
                raise GroupMismatch(f"coordinate {c} is not integral in a Z component")
        object.__setattr__(self, "coords", coords)

    def _same(self, other: "GroupElement"):
        if not isinstance(other, GroupElement):
            raise TypeError(f"expected GroupElement, got {type(other).__name__}")
        if other.group != self.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")

    @classmethod
    def _raw(cls, group: OrderedGroup, coords: Tuple[Fraction, ...]) -> "GroupElement":
        # coordinates already validated (closed under the group operations)
        obj = object.__new__(cls)
        object.__setattr__(obj, "group", group)
        object.__setattr__(obj, "coords", coords)
        return obj

    def __add__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group is not self.group:
            self._same(other)
        return GroupElement._raw(self.group, tuple(map(_add_coord, self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group is not self.group:
            self._same(other)
        return GroupElement._raw(self.group, tuple(map(_sub_coord, self.coords, other.coords)))

    def __neg__(self):
        return GroupElement._raw(self.group, tuple(-a for a in self.coords))

    def scale(self, m) -> "GroupElement":
        """Multiply by an integer (any rational when every touched component is Q)."""
        return GroupElement(self.group, tuple(as_fraction(m) * a for a in self.coords))

    def __mul__(self, m):
        if isinstance(m, GroupElement):
            return NotImplemented
        return self.scale(m)

    __rmul__ = __mul__

    def __lt__(self, other):
        if type(other) is GroupElement and other.group is self.group:
            return self.coords < other.coords
        return cmp_lex(self, other) is Order.LT

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.coords == other.coords

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self.coords)
            object.__setattr__(self, "_hash", h)
        return h

    def __getitem__(self, i: int) -> Fraction:
        """Coordinate ``i`` (1-based)."""
        return self.coords[i - 1]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def sign(self) -> int:
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def nat_val(self):
        return nat_val(self)

    def truncate(self, k: int) -> "GroupElement":
        """Zero every coordinate at index ``>= k``."""
        return GroupElement(self.group, self.coords[: k - 1] + (Fraction(0),) * (self.group.rank - k + 1))

    def prefix(self, k: int) -> Tuple[Fraction, ...]:
        """Coordinates ``1..k-1``."""
        return self.coords[: k - 1]

    def project(self, k: int) -> "GroupElement":
        """Image in ``G / G_k``."""
        return GroupElement(self.group.quotient(k), self.coords[: k - 1])

    def tail(self, k: int) -> "GroupElement":
        """For ``self`` in ``G_k``: the element of the re-indexed tail group."""
        return GroupElement(self.group.tail_group(k), self.coords[k - 1:])

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


def cmp_lex(a: GroupElement, b: GroupElement) -> Order:
    if b is INFINITY:
        return Order.GT if a is INFINITY else Order.LT
    if a is INFINITY:
        return Order.GT
    a._same(b)
    if a.coords == b.coords:
        return Order.EQ
    return Order.LT if a.coords < b.coords else Order.GT


def nat_val(a: GroupElement):
    """Index of the first nonzero coordinate; ``INFINITY`` for zero."""
    for i, c in enumerate(a.coords, start=1):
        if c:
            return i
    return INFINITY


def elt_arith(op: str, *args):
    if op == "add":
        a, b = args
        return a + b
    if op == "neg":
        (a,) = args
        return -a
    if op == "scale_by_integer":
        m, a = args
        if isinstance(m, GroupElement):
            m, a = a, m
        if as_fraction(m).denominator != 1:
            raise ValueError(f"scale factor {m} is not an integer")
        return a.scale(m)
    raise ValueError(f"unknown group operation {op!r}")


def embed_tail(g: GroupElement, group: OrderedGroup, k: int) -> GroupElement:
    """Inverse of ``GroupElement.tail``: place ``g`` in ``G_k`` of ``group``."""
    if g.group != group.tail_group(k):
        raise GroupMismatch(f"{g.group} is not the tail group at level {k} of {group}")
    return GroupElement(group, (Fraction(0),) * (k - 1) + g.coords)


@dataclass(frozen=True)
class ConvexSubgroup:
    """The tail ``G_level``; level ``n + 1`` is ``{0}``, level 1 is ``G``."""

    group: OrderedGroup
    level: int

    def __post_init__(self):
        self.group.check_level(self.level)

    def contains(self, g: GroupElement) -> bool:
        if g.group != self.group:
            raise GroupMismatch(f"{g.group} vs {self.group}")
        return nat_val(g) >= self.level

    __contains__ = contains

    def is_trivial(self) -> bool:
        return self.level == self.group.rank + 1

    def is_whole(self) -> bool:
        return self.level == 1

    def __le__(self, other: "ConvexSubgroup") -> bool:
        """Inclusion."""
        return self.group == other.group and self.level >= other.level

    def __lt__(self, other: "ConvexSubgroup") -> bool:
        return self <= other and self.level != other.level

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __str__(self):
        return f"G_{self.level}"
