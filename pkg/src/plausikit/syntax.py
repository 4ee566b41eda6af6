"""Formula syntax: AST, parser, canonical printer, fragments, bounded enumeration.

Concrete grammar (EBNF)::

    formula     := impl
    impl        := or ("->" impl)?
    or          := and ("|" and)*
    and         := unary ("&" unary)*
    unary       := "~" unary
                 | "K[" ident "]" unary | "Khat[" ident "]" unary
                 | "B[" ident "|" formula "]" unary
                 | "Bplus[" ident "]" unary
                 | "Gt[" ident "]" unary | "GtDia[" ident "]" unary
                 | "[!" formula "]" unary | "[up" formula "]" unary
                 | atomOrParen
    atomOrParen := "true" | "false" | ident | "(" formula ")"

``&`` and ``|`` associate to the left, ``->`` to the right; the unary
operators bind tightest.  ``Khat[i]`` and ``GtDia[i]`` are parser sugar for
``~K[i]~`` and ``~Gt[i]~``; they are expanded while parsing and are not AST
nodes, but the printer re-sugars those two negation patterns so duals stay
readable.  ``true``/``false`` are keywords.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InputError

__all__ = [
    "Formula", "Atom", "Top", "Bot", "Not", "And", "Or", "Implies",
    "Know", "CondBelief", "SafeBelief", "GtBox", "Announce", "Upgrade",
    "Fragment", "ParseError", "parse", "format_formula", "fragment_of",
    "formula_depth", "formula_size", "has_dynamic", "enumerate_formulas",
    "iff", "khat", "gt_dia", "children", "rebuild",
]


class Formula:
    """Base class for all formula nodes."""

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Know(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class CondBelief(Formula):
    agent: str
    cond: Formula
    sub: Formula


@dataclass(frozen=True)
class SafeBelief(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class GtBox(Formula):
    agent: str
    sub: Formula


@dataclass(frozen=True)
class Announce(Formula):
    ann: Formula
    sub: Formula


@dataclass(frozen=True)
class Upgrade(Formula):
    up: Formula
    sub: Formula


_BINARY = (And, Or, Implies)
_DYNAMIC = (Announce, Upgrade)


def khat(agent: str, f: Formula) -> Formula:
    """Dual of the knowledge operator: ``~K[i]~f``."""
    return Not(Know(agent, Not(f)))


def gt_dia(agent: str, f: Formula) -> Formula:
    """Dual of the strict-plausibility box: ``~Gt[i]~f``."""
    return Not(GtBox(agent, Not(f)))


def iff(a: Formula, b: Formula) -> Formula:
    """Biconditional, expanded to a conjunction of implications."""
    return And(Implies(a, b), Implies(b, a))


def children(f: Formula) -> tuple[Formula, ...]:
    """Immediate subformulas, in a fixed left-to-right order."""
    if isinstance(f, (Atom, Top, Bot)):
        return ()
    if isinstance(f, Not):
        return (f.sub,)
    if isinstance(f, _BINARY):
        return (f.left, f.right)
    if isinstance(f, (Know, SafeBelief, GtBox)):
        return (f.sub,)
    if isinstance(f, CondBelief):
        return (f.cond, f.sub)
    if isinstance(f, Announce):
        return (f.ann, f.sub)
    if isinstance(f, Upgrade):
        return (f.up, f.sub)
    raise TypeError(f"not a formula: {f!r}")


def rebuild(f: Formula, parts: tuple[Formula, ...]) -> Formula:
    """Rebuild a node of the same kind around new subformulas."""
    if isinstance(f, (Atom, Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(*parts)
    if isinstance(f, And):
        return And(*parts)
    if isinstance(f, Or):
        return Or(*parts)
    if isinstance(f, Implies):
        return Implies(*parts)
    if isinstance(f, Know):
        return Know(f.agent, *parts)
    if isinstance(f, SafeBelief):
        return SafeBelief(f.agent, *parts)
    if isinstance(f, GtBox):
        return GtBox(f.agent, *parts)
    if isinstance(f, CondBelief):
        return CondBelief(f.agent, *parts)
    if isinstance(f, Announce):
        return Announce(*parts)
    if isinstance(f, Upgrade):
        return Upgrade(*parts)
    raise TypeError(f"not a formula: {f!r}")


def formula_depth(f: Formula) -> int:
    """Nesting depth; atoms and constants sit at depth 0, every other node
    adds one layer, Boolean and modal alike."""
    kids = children(f)
    if not kids:
        return 0
    return 1 + max(formula_depth(k) for k in kids)


def formula_size(f: Formula) -> int:
    """Number of AST nodes."""
    return 1 + sum(formula_size(k) for k in children(f))


def has_dynamic(f: Formula) -> bool:
    """True when an announcement or upgrade operator occurs anywhere in f."""
    if isinstance(f, _DYNAMIC):
        return True
    return any(has_dynamic(k) for k in children(f))


# ---------------------------------------------------------------------------
# Fragments

OPERATOR_KINDS = ("K", "Bc", "Bplus", "Gt", "Ann", "Up")
_STATIC_KINDS = frozenset({"K", "Bc", "Bplus", "Gt"})


@dataclass(frozen=True)
class Fragment:
    """A sublanguage, identified by the set of operator kinds it allows.

    Boolean structure is always allowed; the members of ``operators`` name
    the modal and dynamic constructors that may occur.
    """

    operators: frozenset

    @staticmethod
    def of(*names: str) -> "Fragment":
        for n in names:
            if n not in OPERATOR_KINDS:
                raise InputError(f"unknown operator kind {n!r}")
        return Fragment(frozenset(names))

    @staticmethod
    def parse(text: str) -> "Fragment":
        names = [part.strip() for part in text.split(",") if part.strip()]
        return Fragment.of(*names)

    @property
    def is_static(self) -> bool:
        return "Ann" not in self.operators and "Up" not in self.operators

    def issubset(self, other: "Fragment") -> bool:
        return self.operators <= other.operators

    def __contains__(self, kind: str) -> bool:
        return kind in self.operators

    def __iter__(self):
        return iter(k for k in OPERATOR_KINDS if k in self.operators)

    def __str__(self) -> str:
        return ",".join(self) if self.operators else "(boolean)"


FULL_FRAGMENT = Fragment.of(*OPERATOR_KINDS)
STATIC_FRAGMENT = Fragment.of("K", "Bc", "Bplus", "Gt")

_KIND_OF_NODE = {
    Know: "K",
    CondBelief: "Bc",
    SafeBelief: "Bplus",
    GtBox: "Gt",
    Announce: "Ann",
    Upgrade: "Up",
}


def fragment_of(f: Formula) -> Fragment:
    """Smallest fragment containing every operator kind occurring in f."""
    kinds: set[str] = set()

    def walk(g: Formula) -> None:
        kind = _KIND_OF_NODE.get(type(g))
        if kind is not None:
            kinds.add(kind)
        for k in children(g):
            walk(k)

    walk(f)
    return Fragment(frozenset(kinds))


# ---------------------------------------------------------------------------
# Lexer / parser

class ParseError(InputError):
    """Syntax error with a 1-based character position and expected tokens."""

    def __init__(self, message: str, position: int, expected: Iterable[str] = ()):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at position {position}"
        if self.expected:
            detail += " (expected " + ", ".join(self.expected) + ")"
        super().__init__(detail)


_IDENT_RE = re.compile(r"[A-Za-z0-9_]+")
_MODAL_HEADS = ("K", "Khat", "B", "Bplus", "Gt", "GtDia")


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "sym", "end"
    text: str
    pos: int


def _lex(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("->", i):
            tokens.append(_Token("sym", "->", i + 1))
            i += 2
            continue
        if ch in "~&|()[]!":
            tokens.append(_Token("sym", ch, i + 1))
            i += 1
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            tokens.append(_Token("ident", m.group(), i + 1))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", i + 1)
    tokens.append(_Token("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0) -> _Token:
        j = min(self.i + ahead, len(self.tokens) - 1)
        return self.tokens[j]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "end":
            self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text or tok.kind == "end":
            raise ParseError(
                f"unexpected {tok.text!r}" if tok.kind != "end" else "unexpected end of input",
                tok.pos, [repr(text)])
        return self.take()

    def ident(self, what: str) -> str:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(
                f"expected {what}", tok.pos, ["identifier"])
        self.take()
        return tok.text

    def formula(self) -> Formula:
        left = self.or_level()
        if self.peek().text == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def or_level(self) -> Formula:
        left = self.and_level()
        while self.peek().text == "|":
            self.take()
            left = Or(left, self.and_level())
        return left

    def and_level(self) -> Formula:
        left = self.unary()
        while self.peek().text == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.text == "~":
            self.take()
            return Not(self.unary())
        if tok.kind == "ident" and tok.text in _MODAL_HEADS and self.peek(1).text == "[":
            return self.modal(tok.text)
        if tok.text == "[":
            return self.dynamic()
        return self.atom_or_paren()

    def modal(self, head: str) -> Formula:
        self.take()  # head
        self.take()  # "["
        agent = self.ident("agent name")
        if head == "B":
            self.expect("|")
            cond = self.formula()
            self.expect("]")
            return CondBelief(agent, cond, self.unary())
        self.expect("]")
        sub = self.unary()
        if head == "K":
            return Know(agent, sub)
        if head == "Khat":
            return khat(agent, sub)
        if head == "Bplus":
            return SafeBelief(agent, sub)
        if head == "Gt":
            return GtBox(agent, sub)
        return gt_dia(agent, sub)  # GtDia

    def dynamic(self) -> Formula:
        self.take()  # "["
        tok = self.peek()
        if tok.text == "!":
            self.take()
            ann = self.formula()
            self.expect("]")
            return Announce(ann, self.unary())
        if tok.kind == "ident" and tok.text == "up":
            self.take()
            up = self.formula()
            self.expect("]")
            return Upgrade(up, self.unary())
        raise ParseError(
            f"unexpected {tok.text!r}" if tok.kind != "end" else "unexpected end of input",
            tok.pos, ["'!'", "'up'"])

    def atom_or_paren(self) -> Formula:
        tok = self.peek()
        if tok.text == "(":
            self.take()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok.kind == "ident":
            self.take()
            if tok.text == "true":
                return Top()
            if tok.text == "false":
                return Bot()
            return Atom(tok.text)
        raise ParseError(
            f"unexpected {tok.text!r}" if tok.kind != "end" else "unexpected end of input",
            tok.pos, ["identifier", "'true'", "'false'", "'('", "'~'", "'['"])


def parse(text: str) -> Formula:
    """Parse concrete syntax into a Formula; raises ParseError on bad input."""
    p = _Parser(_lex(text))
    f = p.formula()
    tok = p.peek()
    if tok.kind != "end":
        raise ParseError(f"unexpected {tok.text!r}", tok.pos, ["end of input"])
    return f


# ---------------------------------------------------------------------------
# Canonical printer
#
# Levels: -> is 1 (right-assoc), | is 2 (left-assoc), & is 3 (left-assoc),
# unary operators are tightest.  A parenthesized operand follows its modality
# without a space ("K[a](p -> q)"); any other operand gets one space
# ("K[a] p").

def format_formula(f: Formula) -> str:
    """Deterministic canonical rendering; parse(format_formula(f)) == f."""
    return _fmt(f, 0)


def _fmt(f: Formula, level: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Not):
        inner = f.sub
        if isinstance(inner, Know) and isinstance(inner.sub, Not):
            return f"Khat[{inner.agent}]" + _operand(inner.sub.sub)
        if isinstance(inner, GtBox) and isinstance(inner.sub, Not):
            return f"GtDia[{inner.agent}]" + _operand(inner.sub.sub)
        return "~" + _tight(f.sub)
    if isinstance(f, Know):
        return f"K[{f.agent}]" + _operand(f.sub)
    if isinstance(f, SafeBelief):
        return f"Bplus[{f.agent}]" + _operand(f.sub)
    if isinstance(f, GtBox):
        return f"Gt[{f.agent}]" + _operand(f.sub)
    if isinstance(f, CondBelief):
        return f"B[{f.agent} | {_fmt(f.cond, 0)}]" + _operand(f.sub)
    if isinstance(f, Announce):
        return f"[! {_fmt(f.ann, 0)}]" + _operand(f.sub)
    if isinstance(f, Upgrade):
        return f"[up {_fmt(f.up, 0)}]" + _operand(f.sub)
    if isinstance(f, And):
        out = f"{_fmt(f.left, 3)} & {_fmt(f.right, 4)}"
        return f"({out})" if level > 3 else out
    if isinstance(f, Or):
        out = f"{_fmt(f.left, 2)} | {_fmt(f.right, 3)}"
        return f"({out})" if level > 2 else out
    if isinstance(f, Implies):
        out = f"{_fmt(f.left, 2)} -> {_fmt(f.right, 1)}"
        return f"({out})" if level > 1 else out
    raise TypeError(f"not a formula: {f!r}")


def _operand(sub: Formula) -> str:
    if isinstance(sub, _BINARY):
        return f"({_fmt(sub, 0)})"
    return " " + _fmt(sub, 4)


def _tight(sub: Formula) -> str:
    if isinstance(sub, _BINARY):
        return f"({_fmt(sub, 0)})"
    return _fmt(sub, 4)


# ---------------------------------------------------------------------------
# Bounded enumeration

def enumerate_formulas(atoms: Iterable[str], agents: Iterable[str],
                       fragment: Fragment, depth: int) -> Iterator[Formula]:
    """Yield every formula of nesting depth <= depth over the signature,
    without duplicates.

    The Boolean basis is negation and conjunction plus the constant ``true``
    (which keeps the count bounded); other connectives are expressible and
    not enumerated.  Order is deterministic: layers of increasing depth, and
    within a layer negations, conjunctions, then modal operators in the fixed
    kind order K, Bc, Bplus, Gt, Ann, Up with agents sorted, operands in the
    order previously yielded.
    """
    if depth < 0:
        raise InputError("depth must be >= 0")
    atoms = sorted(set(atoms))
    agents = sorted(set(agents))
    base: list[Formula] = [Atom(p) for p in atoms] + [Top()]
    seen: set[Formula] = set(base)
    yield from base
    prev = list(base)
    for _ in range(depth):
        fresh: list[Formula] = []

        def emit(g: Formula) -> None:
            if g not in seen:
                seen.add(g)
                fresh.append(g)

        for f in prev:
            emit(Not(f))
        for f in prev:
            for g in prev:
                emit(And(f, g))
        if "K" in fragment:
            for i in agents:
                for f in prev:
                    emit(Know(i, f))
        if "Bc" in fragment:
            for i in agents:
                for c in prev:
                    for f in prev:
                        emit(CondBelief(i, c, f))
        if "Bplus" in fragment:
            for i in agents:
                for f in prev:
                    emit(SafeBelief(i, f))
        if "Gt" in fragment:
            for i in agents:
                for f in prev:
                    emit(GtBox(i, f))
        if "Ann" in fragment:
            for c in prev:
                for f in prev:
                    emit(Announce(c, f))
        if "Up" in fragment:
            for c in prev:
                for f in prev:
                    emit(Upgrade(c, f))
        yield from fresh
        prev.extend(fresh)
