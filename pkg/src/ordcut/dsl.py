"""The ordcut DSL: a line-oriented, ``;``-terminated language for groups and cuts.

    group G = Z lex Q;
    elem a = (1, -1/2);
    cut A = ball- a @2;
    series s = 1 - 1 t^(1, 0) + O(t^(3, 0));
    fieldcut F = ballf+ s mod prin- (0, 0);
    seq S = pcs prefix [0] tail step=(0, 1) coeffs=[1];
    irr (0, 0) @2 root(x^2 - 2, 1, 2);

Bare expressions are queries; commands act on them in order.  Every
printed object reparses to an equal object.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import cuts as C
from . import fields as F
from .algebraic import MAX_DEGREE, AlgebraicReal
from .errors import OrdcutError
from .group import Q, Z, GroupElement, OrderedGroup
from .pcs import FIELD, GROUP, PCSeq, TailRule
from .series import Series, TailSeries

KINDS = ("elem", "cut", "series", "fieldcut", "seq")
SIGNED = {"prin", "ball", "prinf", "ballf"}
RESERVED = {
    "group", "use", "lex", "Z", "Q", "top", "bot", "irr", "irrf", "root", "mod", "lim",
    "pcs", "prefix", "tail", "start", "step", "coeffs", "repeat", "t", "O", "x",
    *KINDS, *SIGNED, *(w + s for w in SIGNED for s in "+-"),
}
SYMBOLS = set("()[],;=@+-/*^")


# -- errors -----------------------------------------------------------------------

class DslError(Exception):
    """A positioned failure while reading a document."""

    kind = "DslError"

    def __init__(self, message: str, line: int, col: int, expected=(), name: Optional[str] = None):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        self.name = name or self.kind

    def as_dict(self) -> dict:
        return {"name": self.name, "message": self.message, "line": self.line,
                "col": self.col, "expected": list(self.expected)}


class ParseError(DslError):
    kind = "ParseError"


class BindError(DslError):
    kind = "BindError"


class SortError(DslError):
    kind = "SortError"


class EngineError(DslError):
    """An engine error raised while building an expression; ``name`` is the engine's."""

    kind = "EngineError"


# -- lexer ------------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    type: str  # NUM, NAME, SYM, EOF
    text: str
    line: int
    col: int

    def describe(self) -> str:
        return "end of input" if self.type == "EOF" else repr(self.text)


def tokenize(text: str) -> List[Token]:
    out: List[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit() and ch.isascii():
            j = i
            while j < n and text[j].isdigit() and text[j].isascii():
                j += 1
            out.append(Token("NUM", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if (ch.isalpha() and ch.isascii()) or ch == "_":
            j = i
            while j < n and ((text[j].isalnum() and text[j].isascii()) or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in SIGNED and j < n and text[j] in "+-":
                word += text[j]
                j += 1
            out.append(Token("NAME", word, line, col))
            col += j - i
            i = j
            continue
        if ch in SYMBOLS:
            out.append(Token("SYM", ch, line, col))
            i, col = i + 1, col + 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("EOF", "", line, col))
    return out


# -- document model ---------------------------------------------------------------

@dataclass
class GroupDecl:
    name: str
    group: OrderedGroup
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"group {self.name} = {self.group};"


@dataclass
class Use:
    name: str
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"use {self.name};"


@dataclass
class Binding:
    kind: str
    name: str
    value: object
    line: int = field(default=0, compare=False)

    def __str__(self):
        return f"{self.kind} {self.name} = {format_value(self.value)};"


@dataclass
class Query:
    kind: str
    value: object
    group: Optional[OrderedGroup] = None
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)
    text: str = field(default="", compare=False)

    def __str__(self):
        return f"{format_value(self.value)};"


Statement = Union[GroupDecl, Use, Binding, Query]


@dataclass
class Document:
    statements: List[Statement]

    @property
    def queries(self) -> List[Query]:
        return [s for s in self.statements if isinstance(s, Query)]

    @property
    def bindings(self) -> Dict[str, Binding]:
        return {s.name: s for s in self.statements if isinstance(s, Binding)}

    def __str__(self):
        return format_document(self)


def format_value(v) -> str:
    return repr(v) if isinstance(v, GroupElement) else str(v)


def format_document(doc: Document) -> str:
    return "".join(str(s) + "\n" for s in doc.statements)


def kind_of(value) -> str:
    if isinstance(value, GroupElement):
        return "elem"
    if isinstance(value, C.Cut):
        return "cut"
    if isinstance(value, (Series, TailSeries)):
        return "series"
    if isinstance(value, F.FieldCut):
        return "fieldcut"
    if isinstance(value, PCSeq):
        return "seq"
    raise TypeError(f"no DSL sort for {type(value).__name__}")


# -- parser -----------------------------------------------------------------------

CUT_START = ("top", "bot", "prin+", "prin-", "ball+", "ball-", "irr")
FIELD_START = ("prinf+", "prinf-", "ballf+", "ballf-", "irrf")


class Parser:
    def __init__(self, text: str, group: Optional[OrderedGroup] = None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.groups: Dict[str, OrderedGroup] = {}
        self.env: Dict[str, Tuple[str, object, Optional[OrderedGroup]]] = {}
        self.group = group

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, *texts: str) -> bool:
        t = self.tok
        return t.type in ("SYM", "NAME") and t.text in texts

    def advance(self) -> Token:
        t = self.tok
        if t.type != "EOF":
            self.i += 1
        return t

    def fail(self, expected, what: Optional[str] = None, tok: Optional[Token] = None):
        tok = tok or self.tok
        exp = [expected] if isinstance(expected, str) else list(expected)
        msg = what or f"expected {' or '.join(sorted(exp))}, found {tok.describe()}"
        raise ParseError(msg, tok.line, tok.col, exp)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        return self.advance()

    def expect_type(self, typ: str, label: str) -> Token:
        if self.tok.type != typ:
            self.fail(label)
        return self.advance()

    def engine(self, fn, tok: Token):
        """Run an engine constructor, repositioning its errors at ``tok``."""
        try:
            return fn()
        except DslError:
            raise
        except OrdcutError as e:
            raise EngineError(str(e), tok.line, tok.col, name=e.name) from None
        except ZeroDivisionError as e:
            raise EngineError(str(e) or "division by zero", tok.line, tok.col, name="DivisionByZero") from None
        except (ValueError, TypeError, OverflowError) as e:
            raise EngineError(str(e), tok.line, tok.col, name="InvalidCut") from None

    def need_group(self, tok: Token) -> OrderedGroup:
        if self.group is None:
            raise BindError("no group in scope; declare one with `group NAME = ...;`", tok.line, tok.col)
        return self.group

    def lookup(self, kind: str) -> object:
        tok = self.advance()
        if tok.text not in self.env:
            raise BindError(f"unknown name {tok.text!r}", tok.line, tok.col, [kind])
        k, value, g = self.env[tok.text]
        if k != kind:
            raise SortError(f"{tok.text!r} is a {k}, expected a {kind}", tok.line, tok.col, [kind])
        if g is not None and self.group is not None and g != self.group:
            raise SortError(f"{tok.text!r} lives in {g}, not in {self.group}", tok.line, tok.col, [kind])
        return value

    def is_ref(self) -> bool:
        return self.tok.type == "NAME" and self.tok.text not in RESERVED

    # document
    def document(self) -> Document:
        stmts: List[Statement] = []
        while self.tok.type != "EOF":
            stmts.append(self.statement())
        return Document(stmts)

    def statement(self) -> Statement:
        tok = self.tok
        if self.at("group"):
            self.advance()
            name = self.binder()
            self.expect("=")
            g = self.group_expr()
            self.expect(";")
            self.groups[name] = g
            self.group = g
            return GroupDecl(name, g, tok.line)
        if self.at("use"):
            self.advance()
            nt = self.expect_type("NAME", "group name")
            if nt.text not in self.groups:
                raise BindError(f"unknown group {nt.text!r}", nt.line, nt.col, ["group name"])
            self.expect(";")
            self.group = self.groups[nt.text]
            return Use(nt.text, tok.line)
        if self.at(*KINDS) and self.peek().type == "NAME" and self.peek(2).text == "=":
            kind = self.advance().text
            name = self.binder()
            self.expect("=")
            value = self.value_of(kind)
            self.expect(";")
            self.env[name] = (kind, value, self.group)
            return Binding(kind, name, value, tok.line)
        start = self.tok
        kind, value = self.any_value()
        end = self.tok
        self.expect(";")
        src = self._slice(start, end)
        return Query(kind, value, self.group, start.line, start.col, src)

    def _slice(self, a: Token, b: Token) -> str:
        lines = self.text.split("\n")
        if a.line == b.line:
            return lines[a.line - 1][a.col - 1: b.col - 1].strip()
        parts = [lines[a.line - 1][a.col - 1:]] + lines[a.line: b.line - 1] + [lines[b.line - 1][: b.col - 1]]
        return " ".join(p.strip() for p in parts).strip()

    def binder(self) -> str:
        t = self.tok
        if t.type != "NAME" or t.text in RESERVED:
            self.fail("name")
        if t.text in self.env or t.text in self.groups:
            raise BindError(f"{t.text!r} is already bound", t.line, t.col)
        return self.advance().text

    def any_value(self) -> Tuple[str, object]:
        if self.at(*CUT_START):
            return "cut", self.cut()
        if self.at(*FIELD_START):
            return "fieldcut", self.field_cut()
        if self.at("pcs"):
            return "seq", self.sequence()
        if self.at("("):
            return "elem", self.element()
        if self.is_ref():
            name = self.tok.text
            if name in self.env:
                kind = self.env[name][0]
                if kind != "series":
                    return kind, self.value_of(kind)
        if self.at("-", "+", "t", "O", "lim") or self.tok.type == "NUM" or self.is_ref():
            return "series", self.anchor() if self.at("lim") else self.series()
        self.fail(["cut", "field cut", "series", "element", "pcs"])

    def value_of(self, kind: str):
        if kind == "elem":
            return self.element()
        if kind == "cut":
            return self.cut()
        if kind == "series":
            return self.anchor() if self.at("lim") else self.series()
        if kind == "fieldcut":
            return self.field_cut()
        return self.sequence()

    # groups and numbers
    def group_expr(self) -> OrderedGroup:
        if self.tok.type == "NUM" and self.tok.text == "0":
            self.advance()
            return OrderedGroup(())
        comps = [self.component()]
        while self.at("lex"):
            self.advance()
            comps.append(self.component())
        return OrderedGroup(tuple(comps))

    def component(self) -> str:
        if not self.at(Z, Q):
            self.fail(["'Z'", "'Q'"])
        return self.advance().text

    def natural(self) -> int:
        return int(self.expect_type("NUM", "integer").text)

    def unsigned_rational(self) -> Fraction:
        t = self.expect_type("NUM", "number")
        num = int(t.text)
        if self.at("/") and self.peek().type == "NUM":
            self.advance()
            d = self.advance()
            if int(d.text) == 0:
                raise ParseError("zero denominator", d.line, d.col, ["nonzero integer"])
            return Fraction(num, int(d.text))
        return Fraction(num)

    def rational(self) -> Fraction:
        sign = 1
        if self.at("-", "+"):
            sign = -1 if self.advance().text == "-" else 1
        return sign * self.unsigned_rational()

    def rational_list(self) -> Tuple[Fraction, ...]:
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.rational())
            while self.at(","):
                self.advance()
                out.append(self.rational())
        self.expect("]")
        return tuple(out)

    # elements
    def element(self) -> GroupElement:
        tok = self.tok
        if self.is_ref():
            return self.lookup("elem")
        g = self.need_group(tok)
        self.expect("(")
        coords = []
        if not self.at(")"):
            coords.append(self.rational())
            while self.at(","):
                self.advance()
                coords.append(self.rational())
        self.expect(")")
        if len(coords) != g.rank:
            raise SortError(f"{len(coords)} coordinates for the rank-{g.rank} group {g}", tok.line, tok.col)
        return self.engine(lambda: g.element(coords), tok)

    # cuts
    def cut(self) -> C.Cut:
        tok = self.tok
        if self.is_ref():
            return self.lookup("cut")
        if not self.at(*CUT_START):
            self.fail([repr(k) for k in CUT_START] + ["cut name"])
        head = self.advance().text
        g = self.need_group(tok)
        if head == "top":
            return C.Top(g)
        if head == "bot":
            return C.Bot(g)
        a = self.element()
        if head.startswith("prin"):
            return self.engine(lambda: C.Prin(a, head[-1]), tok)
        at = self.expect("@")
        k = self.natural()
        if head.startswith("ball"):
            self.engine(lambda: g.check_level(k), at)
            return self.engine(lambda: C.Ball(a, k, head[-1]), tok)
        self.engine(lambda: g.check_level(k), at)
        r = self.algebraic()
        return self.engine(lambda: C.Irr(a, k, r), tok)

    def algebraic(self) -> AlgebraicReal:
        tok = self.expect("root")
        self.expect("(")
        poly = self.polynomial()
        self.expect(",")
        lo = self.rational()
        self.expect(",")
        hi = self.rational()
        self.expect(")")
        return self.engine(lambda: AlgebraicReal.from_root(poly, lo, hi), tok)

    def polynomial(self) -> List[Fraction]:
        coeffs: Dict[int, Fraction] = {}
        sign = 1
        if self.at("-", "+"):
            sign = -1 if self.advance().text == "-" else 1
        while True:
            c, d = self.poly_term()
            coeffs[d] = coeffs.get(d, Fraction(0)) + sign * c
            if not self.at("-", "+"):
                break
            sign = -1 if self.advance().text == "-" else 1
        deg = max(coeffs)
        return [coeffs.get(i, Fraction(0)) for i in range(deg + 1)]

    def poly_term(self) -> Tuple[Fraction, int]:
        c = Fraction(1)
        if self.tok.type == "NUM":
            c = self.unsigned_rational()
            if not self.at("*"):
                return c, 0
            self.advance()
        self.expect("x")
        d = 1
        if self.at("^"):
            self.advance()
            t = self.tok
            d = self.natural()
            if d > MAX_DEGREE:
                raise ParseError(f"degree {d} exceeds {MAX_DEGREE}", t.line, t.col)
        return c, d

    # series
    def series(self) -> Series:
        tok = self.tok
        g = self.need_group(tok)
        terms: List[Tuple[GroupElement, Fraction]] = []
        parts: List[Series] = []
        prec = None
        sign = 1
        if self.at("-", "+"):
            sign = -1 if self.advance().text == "-" else 1
        while True:
            t = self.tok
            if self.at("O"):
                self.advance()
                self.expect("(")
                self.expect("t")
                self.expect("^")
                e = self.element()
                self.expect(")")
                prec = e if prec is None else min(prec, e)
            elif self.is_ref():
                s = self.lookup("series")
                if not isinstance(s, Series):
                    raise SortError("a limit anchor cannot be combined with other terms", t.line, t.col)
                parts.append(s if sign > 0 else -s)
            elif self.tok.type == "NUM" or self.at("t"):
                c = Fraction(1)
                if self.tok.type == "NUM":
                    c = self.unsigned_rational()
                e = g.zero()
                if self.at("t"):
                    self.advance()
                    self.expect("^")
                    e = self.element()
                terms.append((e, sign * c))
            else:
                self.fail(["number", "'t'", "'O'", "series name"])
            if not self.at("-", "+"):
                break
            sign = -1 if self.advance().text == "-" else 1

        def build():
            out = Series(g, terms)
            for p in parts:
                out = out + p
            if prec is not None:
                out = out.truncated(prec)
            return out
        return self.engine(build, tok)

    def anchor(self):
        if not self.at("lim"):
            return self.series()
        tok = self.advance()
        self.expect("(")
        head = self.series()
        self.expect(";")
        self.expect("start")
        self.expect("=")
        start = self.element()
        self.expect("step")
        self.expect("=")
        step = self.element()
        self.expect("coeffs")
        self.expect("=")
        pre = self.rational_list()
        rep: Tuple[Fraction, ...] = ()
        if self.at("repeat"):
            self.advance()
            self.expect("=")
            rep = self.rational_list()
        self.expect(")")
        if not rep:
            pre, rep = (), pre

        def build():
            if not rep or not any(rep):
                raise OrdcutError("a limit tail needs a nonzero repeating coefficient")
            return TailSeries(head, start, step, pre, rep)
        return self.engine(build, tok)

    # field cuts
    def field_cut(self) -> F.FieldCut:
        tok = self.tok
        if self.is_ref():
            return self.lookup("fieldcut")
        if not self.at(*FIELD_START):
            self.fail([repr(k) for k in FIELD_START] + ["field cut name"])
        head = self.advance().text
        if head == "irrf":
            a = self.series()
            self.expect("@")
            gamma = self.element()
            r = self.algebraic()
            return self.engine(lambda: F.IrrF(a, gamma, r), tok)
        a = self.anchor()
        if head.startswith("prinf"):
            return self.engine(lambda: F.PrinF(a, head[-1]), tok)
        mt = self.expect("mod")
        seg = self.cut()
        m = self.engine(lambda: F.ModuleDesc(seg), mt)
        return self.engine(lambda: F.BallF(a, m, head[-1]), tok)

    # sequences
    def sequence(self) -> PCSeq:
        tok = self.tok
        if self.is_ref():
            return self.lookup("seq")
        self.expect("pcs")
        g = self.need_group(tok)
        self.expect("prefix")
        self.expect("[")
        entries = []
        if not self.at("]"):
            entries.append(self.seq_entry())
            while self.at(","):
                self.advance()
                entries.append(self.seq_entry())
        self.expect("]")
        kinds = {isinstance(e, GroupElement) for e in entries}
        if len(kinds) > 1:
            raise SortError("a prefix mixes group elements and series", tok.line, tok.col)
        ambient = GROUP if kinds == {True} else FIELD
        tail_rule = None
        if self.at("tail"):
            tt = self.advance()
            start = None
            if self.at("start"):
                self.advance()
                self.expect("=")
                start = self.element()
            self.expect("step")
            self.expect("=")
            step = self.element()
            self.expect("coeffs")
            self.expect("=")
            coeffs = self.rational_list()
            repeat: Tuple[Fraction, ...] = ()
            if self.at("repeat"):
                self.advance()
                self.expect("=")
                repeat = self.rational_list()
            tail_rule = self.engine(lambda: TailRule(step, coeffs, repeat, start), tt)
        return self.engine(lambda: PCSeq(g, tuple(entries), tail_rule, ambient), tok)

    def seq_entry(self):
        if self.at("("):
            return self.element()
        if self.is_ref() and self.tok.text in self.env and self.env[self.tok.text][0] == "elem":
            return self.element()
        return self.series()


def parse(text: str, group: Optional[OrderedGroup] = None) -> Document:
    """Parse a whole document; every failure is a :class:`DslError`."""
    return Parser(text, group).document()


def parse_value(text: str, group: OrderedGroup):
    """Parse one bare expression (no terminator needed) in ``group``."""
    body = text.strip()
    if not body.endswith(";"):
        body += ";"
    doc = parse(body, group)
    qs = doc.queries
    if len(qs) != 1 or len(doc.statements) != 1:
        raise ParseError("expected exactly one expression", 1, 1)
    return qs[0].value


# -- generated documents ----------------------------------------------------------

def random_document(rng: random.Random) -> str:
    """A document exercising every statement form, for round-trip and fuzz corpora."""
    from . import sampling as S

    lines: List[str] = []
    groups = rng.sample(S.all_groups(3), rng.randint(1, 2))
    for gi, g in enumerate(groups):
        lines.append(f"group G{gi} = {g};")
    for gi, g in enumerate(groups):
        if len(groups) > 1:
            lines.append(f"use G{gi};")
        pre = f"g{gi}_"
        e = S.rand_element(rng, g)
        lines.append(f"elem {pre}e = {e!r};")
        cut = S.rand_cut(rng, g, allow_edges=True)
        lines.append(f"cut {pre}c = {cut};")
        lines.append(f"{pre}c;")
        lines.append(f"prin{rng.choice('+-')} {pre}e;")
        for _ in range(rng.randint(1, 3)):
            lines.append(f"{S.rand_cut(rng, g, allow_edges=True)};")
        s = S.rand_series(rng, g, 4)
        if rng.random() < 0.3:
            s = s.truncated(S.rand_exponent(rng, g, 5))
        lines.append(f"series {pre}s = {s};")
        lines.append(f"{pre}s - 1;")
        lines.append(f"{S.rand_field_cut(rng, g)};")
        if rng.random() < 0.5:
            try:
                seq = S.rand_pcs(rng, g)
            except OrdcutError:
                seq = None
            if seq is not None:
                lines.append(f"seq {pre}q = {seq};")
                lines.append(f"prinf- {seq.limit_anchor()};")
    return "\n".join(lines) + "\n"


_FUZZ_ALPHABET = "()[],;=@+-/*^ 0123456789abxtOZQ\n#"


def mutate(rng: random.Random, text: str) -> str:
    """A random local corruption of ``text``."""
    if not text:
        return rng.choice(_FUZZ_ALPHABET)
    for _ in range(rng.randint(1, 3)):
        n = len(text)
        i = rng.randrange(n)
        op = rng.randrange(6)
        if op == 0:
            text = text[:i] + text[i + 1:]
        elif op == 1:
            text = text[:i] + rng.choice(_FUZZ_ALPHABET) + text[i:]
        elif op == 2:
            text = text[:i] + rng.choice(_FUZZ_ALPHABET) + text[i + 1:]
        elif op == 3:
            j = min(n, i + rng.randint(1, 12))
            text = text[:j] + text[i:j] + text[j:]
        elif op == 4:
            text = text[:i]
        else:
            words = text.split(" ")
            if len(words) > 2:
                a, b = rng.sample(range(len(words)), 2)
                words[a], words[b] = words[b], words[a]
                text = " ".join(words)
        if not text:
            text = rng.choice(_FUZZ_ALPHABET)
    return text
