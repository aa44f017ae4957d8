"""Formulas of the layered hybrid language: AST, parser, classification, rendering.

Concrete syntax (loosest to tightest binding)::

    a -> b      implication, right associative, sugar for !(a & !b)
    a | b       disjunction, sugar for !(!a & !b)
    a & b       conjunction
    !a          negation
    @i a        satisfaction operator, i a nominal
    <k> a       diamond of level k
    (a), name   grouping and atoms

Atoms are bare symbol names; their level and kind come from the signature.
``<k> a`` needs ``a`` of level at most ``k`` and ``@i a`` needs ``a`` of level
at most the level of ``i``. Every other combination is well formed, because a
formula of level ``j`` is also a formula of each level above ``j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import NamedTuple, Optional

from .errors import FormulaSyntaxError, LevelOutOfRange, LevelViolation
from .signature import Signature


class Formula:
    """Base class of the AST. Nodes are immutable and compare structurally."""

    @cached_property
    def level(self) -> int:
        raise NotImplementedError

    @cached_property
    def positive(self) -> bool:
        return not isinstance(self, Neg) and all(c.positive for c in self.children())

    @cached_property
    def size(self) -> int:
        return 1 + sum(c.size for c in self.children())

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Nom(Formula):
    name: str
    lvl: int

    @cached_property
    def level(self):
        return self.lvl


@dataclass(frozen=True)
class Prop(Formula):
    name: str
    lvl: int

    @cached_property
    def level(self):
        return self.lvl


@dataclass(frozen=True)
class Neg(Formula):
    arg: Formula

    @cached_property
    def level(self):
        return self.arg.level

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    @cached_property
    def level(self):
        return max(self.left.level, self.right.level)

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class At(Formula):
    nom: str
    lvl: int
    arg: Formula

    @cached_property
    def level(self):
        return self.lvl

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Diamond(Formula):
    lvl: int
    arg: Formula

    @cached_property
    def level(self):
        return self.lvl

    def children(self):
        return (self.arg,)


ATOMS = (Nom, Prop)
BASIC = (Nom, Prop, At, Diamond)


def subformulas(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def check_levels(f: Formula) -> None:
    """Raise LevelViolation unless every ``<k>``/``@i`` argument fits its operator."""
    for g in subformulas(f):
        if isinstance(g, Diamond) and g.arg.level > g.lvl:
            raise LevelViolation(render(g), f"argument of level {g.arg.level} under <{g.lvl}>")
        if isinstance(g, At) and g.arg.level > g.lvl:
            raise LevelViolation(render(g), f"argument of level {g.arg.level} under @{g.nom} (level {g.lvl})")


# ---------------------------------------------------------------- classification


class Classification(NamedTuple):
    level: int
    positive: bool
    strict_at: Optional[int]
    basic_at: Optional[int]


def strict_level(f: Formula) -> Optional[int]:
    """The ``k`` for which ``f`` is a strict ``k``-layered formula, if any."""
    k = f.level
    for g in subformulas(f):
        if isinstance(g, (Nom, Prop, At, Diamond)) and g.lvl != k:
            return None
    return k


def basic_level(f: Formula) -> Optional[int]:
    """Least ``k`` with ``f`` a basic formula of level ``k``; None for a top-level ``!``/``&``."""
    return f.level if isinstance(f, BASIC) else None


def classify(f: Formula) -> Classification:
    return Classification(f.level, f.positive, strict_level(f), basic_level(f))


# ---------------------------------------------------------------- rendering


def render(f: Formula) -> str:
    """Fully parenthesised concrete syntax; ``parse(render(f), sig) == f``."""
    if isinstance(f, (Nom, Prop)):
        return f.name
    if isinstance(f, Neg):
        return f"(!{render(f.arg)})"
    if isinstance(f, And):
        return f"({render(f.left)} & {render(f.right)})"
    if isinstance(f, At):
        return f"(@{f.nom} {render(f.arg)})"
    if isinstance(f, Diamond):
        return f"(<{f.lvl}> {render(f.arg)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<dia><\s*(?P<dl>\d+)\s*>)|(?P<at>@)|(?P<name>[A-Za-z0-9_]+)|(?P<op>[!&|()]))")


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.sig = sig
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise FormulaSyntaxError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
            start = m.start(m.lastgroup if m.lastgroup != "dl" else "dia")
            if m.group("arrow"):
                self.toks.append(("->", "->", start))
            elif m.group("dia"):
                self.toks.append(("dia", m.group("dl"), start))
            elif m.group("at"):
                self.toks.append(("@", "@", start))
            elif m.group("name"):
                self.toks.append(("name", m.group("name"), start))
            else:
                self.toks.append((m.group("op"), m.group("op"), start))
            pos = m.end()
        self.end = len(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", self.end)

    def take(self, kind=None):
        tok = self.peek()
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.implication()
        tok = self.peek()
        if tok[0] != "eof":
            raise FormulaSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def implication(self):
        left = self.disjunction()
        if self.peek()[0] == "->":
            self.take()
            right = self.implication()
            return Neg(And(left, Neg(right)))
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek()[0] == "|":
            self.take()
            right = self.conjunction()
            left = Neg(And(Neg(left), Neg(right)))
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek()[0] == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        kind, val, pos = self.peek()
        if kind == "!":
            self.take()
            return Neg(self.unary())
        if kind == "@":
            self.take()
            _, name, npos = self.take("name")
            lvl, sort = self._resolve(name, npos)
            if sort != "nom":
                raise FormulaSyntaxError(f"@ needs a nominal, {name!r} is a proposition", npos)
            f = At(name, lvl, self.unary())
            check_levels_node(f)
            return f
        if kind == "dia":
            self.take()
            lvl = int(val)
            if lvl > self.sig.depth:
                raise LevelOutOfRange(lvl, self.sig.depth)
            f = Diamond(lvl, self.unary())
            check_levels_node(f)
            return f
        if kind == "(":
            self.take()
            f = self.implication()
            self.take(")")
            return f
        if kind == "name":
            self.take()
            lvl, sort = self._resolve(val, pos)
            return Nom(val, lvl) if sort == "nom" else Prop(val, lvl)
        what = "end of input" if kind == "eof" else repr(val)
        raise FormulaSyntaxError(f"expected a formula, found {what}", pos)

    def _resolve(self, name, pos):
        return self.sig.symbol_level(name)


def check_levels_node(f: Formula) -> None:
    if f.arg.level > f.lvl:
        op = f"<{f.lvl}>" if isinstance(f, Diamond) else f"@{f.nom}"
        raise LevelViolation(render(f), f"level-{f.arg.level} argument under {op}")


def parse(text: str, sig: Signature) -> Formula:
    """Parse ``text`` over ``sig``, enforcing the level discipline."""
    return _Parser(text, sig).parse()


def load_formulas(path, sig: Signature) -> list[Formula]:
    """One formula per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line, sig))
    return out
