"""Formulas of the graph language: AST, parser and printer.

Concrete syntax::

    atom     := ident "~" ident | ident "=" ident | ident "!=" ident
              | "E" "(" ident ("," ident)* ")"          (hyperedge atom)
    formula  := atom | "!" formula | "(" formula ")"
              | formula ("&" | "|" | "->") formula
              | ("forall" | "exists") ident+ formula

Binary connectives may be written with or without surrounding parentheses;
``!`` binds tightest, then ``&``, then ``|``, then ``->`` (right
associative).  The printer always emits the fully parenthesized form, e.g.
``forall y ((x ~ y) -> (y ~ x))``, and ``parse(str(f)) == f``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

from ..core import RadoError


class ParseError(RadoError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at position {pos}"
        if text:
            where += f": {text[:pos]!r} <here> {text[pos:]!r}"
        super().__init__(message + where)


class UnboundVariableError(RadoError):
    def __init__(self, names):
        self.names = sorted(names)
        super().__init__(f"unbound variable(s) in sentence: {', '.join(self.names)}")


class ArityError(RadoError):
    pass


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Adj:
    x: str
    y: str


@dataclass(frozen=True)
class Eq:
    x: str
    y: str


@dataclass(frozen=True)
class Edge:
    """Hyperedge atom ``E(x1, ..., xk)``: the values are distinct and form an edge."""

    args: tuple


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Adj, Eq, Edge, Not, And, Or, Implies, Forall, Exists]
ATOMS = (Adj, Eq, Edge)
BINARY = {And: "&", Or: "|", Implies: "->"}
QUANTIFIERS = {Forall: "forall", Exists: "exists"}


def conj(parts: list[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is not representable."""
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts: list[Formula]) -> Formula:
    if not parts:
        raise ValueError("empty disjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def forall(vars_: list[str], body: Formula) -> Formula:
    for v in reversed(vars_):
        body = Forall(v, body)
    return body


def exists(vars_: list[str], body: Formula) -> Formula:
    for v in reversed(vars_):
        body = Exists(v, body)
    return body


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, (Adj, Eq)):
        return frozenset((f.x, f.y))
    if isinstance(f, Edge):
        return frozenset(f.args)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    return free_vars(f.body) - {f.var}


def quantifier_depth(f: Formula) -> int:
    if isinstance(f, ATOMS):
        return 0
    if isinstance(f, Not):
        return quantifier_depth(f.body)
    if isinstance(f, (And, Or, Implies)):
        return max(quantifier_depth(f.left), quantifier_depth(f.right))
    return 1 + quantifier_depth(f.body)


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (Not, Forall, Exists)):
        yield from subformulas(f.body)
    elif isinstance(f, (And, Or, Implies)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def edge_arities(f: Formula) -> set[int]:
    return {len(g.args) for g in subformulas(f) if isinstance(g, Edge)}


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------


def _wrap(f: Formula) -> str:
    s = to_text(f)
    if isinstance(f, (Adj, Eq)):
        return f"({s})"
    return s


def to_text(f: Formula) -> str:
    if isinstance(f, Adj):
        return f"{f.x} ~ {f.y}"
    if isinstance(f, Eq):
        return f"{f.x} = {f.y}"
    if isinstance(f, Edge):
        return f"E({', '.join(f.args)})"
    if isinstance(f, Not):
        return "!" + _wrap(f.body)
    if isinstance(f, (And, Or, Implies)):
        return f"({_wrap(f.left)} {BINARY[type(f)]} {_wrap(f.right)})"
    body = to_text(f.body)
    if not isinstance(f.body, (And, Or, Implies)):
        body = f"({body})"
    return f"{QUANTIFIERS[type(f)]} {f.var} {body}"


for _cls in (Adj, Eq, Edge, Not, And, Or, Implies, Forall, Exists):
    _cls.__str__ = to_text  # type: ignore[assignment]


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op>->|!=|[~=!&|(),])|(?P<word>[A-Za-z_][A-Za-z_0-9']*)|(?P<bad>\S))"
)
_KEYWORDS = {"forall", "exists"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            if m.group("bad"):
                raise ParseError(f"unexpected character {m.group('bad')!r}", m.start("bad"), text)
            kind = "op" if m.group("op") else "word"
            val = m.group(kind)
            if val is None:
                continue
            self.toks.append((kind, val, m.start(kind)))
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("eof", "", len(self.text))

    def take(self, value: str | None = None, kind: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {want}, found {got}", tok[2], self.text)
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.take(kind="word")
        if tok[1] in _KEYWORDS:
            raise ParseError(f"keyword {tok[1]!r} used as a variable", tok[2], self.text)
        return tok[1]

    def formula(self) -> Formula:
        return self.implication()

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[1] == "->":
            self.take("->")
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek()[1] == "|":
            self.take("|")
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek()[1] == "&":
            self.take("&")
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "!":
            self.take("!")
            return Not(self.unary())
        if val == "(":
            self.take("(")
            f = self.formula()
            self.take(")")
            return f
        if kind == "word" and val in _KEYWORDS:
            self.take()
            names = [self.ident()]
            while self.peek()[0] == "word" and self.peek()[1] not in _KEYWORDS \
                    and self._next_is_binder():
                names.append(self.ident())
            body = self.unary()
            cls = Forall if val == "forall" else Exists
            for v in reversed(names):
                body = cls(v, body)
            return body
        if kind == "word":
            return self.atom()
        raise ParseError(
            "expected a formula, found " + ("end of input" if kind == "eof" else repr(val)),
            pos, self.text,
        )

    def _next_is_binder(self) -> bool:
        # in "forall x y (...)" the y is another bound variable, but in
        # "forall x y ~ z" it would start the body; look one token ahead
        nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else ("eof", "", 0)
        return nxt[1] not in ("~", "=", "!=", "(") or (
            nxt[1] == "(" and self.peek()[1] != "E"
        )

    def atom(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "E" and self.i + 1 < len(self.toks) and self.toks[self.i + 1][1] == "(":
            self.take()
            self.take("(")
            args = [self.ident()]
            while self.peek()[1] == ",":
                self.take(",")
                args.append(self.ident())
            self.take(")")
            return Edge(tuple(args))
        x = self.ident()
        op = self.peek()
        if op[1] == "~":
            self.take()
            return Adj(x, self.ident())
        if op[1] == "=":
            self.take()
            return Eq(x, self.ident())
        if op[1] == "!=":
            self.take()
            return Not(Eq(x, self.ident()))
        raise ParseError(
            "expected '~', '=' or '!=' after variable "
            + repr(x), op[2], self.text,
        )


def parse(text: str) -> Formula:
    """Parse a formula (free variables allowed)."""
    p = _Parser(text)
    if p.peek()[0] == "eof":
        raise ParseError("empty formula", 0, text)
    f = p.formula()
    if p.peek()[0] != "eof":
        kind, val, pos = p.peek()
        raise ParseError(f"unexpected {val!r} after formula", pos, text)
    return f


def parse_sentence(text: str) -> Formula:
    """Parse and require that no variable is free."""
    f = parse(text)
    free = free_vars(f)
    if free:
        raise UnboundVariableError(free)
    return f


def as_formula(s: "str | Formula") -> Formula:
    return parse_sentence(s) if isinstance(s, str) else s
