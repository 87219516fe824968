"""Concrete ASCII syntax: lexer, precedence-climbing parser and renderer.

See grammar.md at the repository root for the EBNF.  Sugar (``&``, ``|``,
``<->``, ``true``, ``false``, ``hatK_a`` and the ``<+*>``-style duals) is
expanded here, so the parser only ever returns primitive nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    BOTTOM,
    RESERVED_ATOM,
    TOP,
    AddSkills,
    AssignSkills,
    Atom,
    BoxAssign,
    BoxMinus,
    BoxPlus,
    Common,
    CopySkills,
    Distributed,
    Field,
    Formula,
    GroupOp,
    Implies,
    Knows,
    Mutual,
    Not,
    Quantifier,
    RemoveSkills,
    SkillUpdate,
    conj,
    disj,
    dual,
    iff,
    possible,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class EmptySetError(FormulaSyntaxError):
    pass


_ID = r"[A-Za-z0-9_]+"
_NAME = re.compile(rf"{_ID}\Z")

_UPDATE_CLASS = {"+": AddSkills, "-": RemoveSkills, "=": AssignSkills}
_QUANT_CLASS = {"+": BoxPlus, "-": BoxMinus, "=": BoxAssign}
_GROUP_CLASS = {"C": Common, "D": Distributed, "E": Mutual, "F": Field}

_UPDATE_TOKEN = {cls: sym for sym, cls in _UPDATE_CLASS.items()}
_QUANT_TOKEN = {cls: sym for sym, cls in _QUANT_CLASS.items()}
_GROUP_TOKEN = {cls: sym for sym, cls in _GROUP_CLASS.items()}

# Order matters: longer and more specific patterns first.
_TOKEN_SPEC = [
    ("WS", r"\s+"),
    ("UPDATE", rf"\(\s*([+\-=])\s*\{{([^}}]*)\}}\s*\)_({_ID})"),
    ("COPY", rf"\(\s*==\s*({_ID})\s*\)_({_ID})"),
    ("QUANT", rf"\[\s*([+\-=])\s*\*\s*\]_({_ID})"),
    ("DUALQ", rf"<\s*([+\-=])\s*\*\s*>_({_ID})"),
    ("GROUP", rf"([CDEF])_\{{([^}}]*)\}}"),
    ("KNOWS", rf"(hatK|K)_({_ID})"),
    ("IFF", r"<->"),
    ("IMP", r"->"),
    ("AND", r"&"),
    ("OR", r"\|"),
    ("NOT", r"~"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("NAME", _ID),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))
_GROUP_COUNT = {name: re.compile(pattern).groups for name, pattern in _TOKEN_SPEC}


@dataclass
class Token:
    kind: str
    text: str
    pos: int
    args: tuple[str, ...] = ()


def _split_names(body: str, pos: int, what: str) -> frozenset[str]:
    items = [item.strip() for item in body.split(",")]
    if items == [""]:
        raise EmptySetError(f"empty {what}", pos)
    for item in items:
        if not _NAME.match(item):
            raise FormulaSyntaxError(f"bad name {item!r} in {what}", pos)
    return frozenset(items)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        if kind != "WS":
            # groups() is 0-based, so this slice starts just after the named group
            start = _TOKEN_RE.groupindex[kind]
            args = match.groups()[start: start + _GROUP_COUNT[kind]]
            tokens.append(Token(kind, match.group(kind), pos, args))
        pos = match.end()
    tokens.append(Token("EOF", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect(self, kind: str) -> Token:
        token = self.current
        if token.kind != kind:
            found = token.text or "end of input"
            raise FormulaSyntaxError(f"expected {kind}, found {found!r}", token.pos)
        return self.advance()

    def parse(self) -> Formula:
        f = self.biconditional()
        self.expect("EOF")
        return f

    def biconditional(self) -> Formula:
        left = self.implication()
        if self.current.kind == "IFF":
            self.advance()
            return iff(left, self.biconditional())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.current.kind == "IMP":
            self.advance()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.current.kind == "OR":
            self.advance()
            left = disj(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.current.kind == "AND":
            self.advance()
            left = conj(left, self.unary())
        return left

    def unary(self) -> Formula:
        token = self.current
        kind = token.kind
        if kind == "NOT":
            self.advance()
            return Not(self.unary())
        if kind == "KNOWS":
            self.advance()
            op, agent = token.args
            body = self.unary()
            return Knows(agent, body) if op == "K" else possible(agent, body)
        if kind == "GROUP":
            self.advance()
            letter, body = token.args
            group = _split_names(body, token.pos, "group")
            return _GROUP_CLASS[letter](group, self.unary())
        if kind == "UPDATE":
            self.advance()
            sym, body, agent = token.args
            skills = _split_names(body, token.pos, "skill set")
            return _UPDATE_CLASS[sym](agent, skills, self.unary())
        if kind == "COPY":
            self.advance()
            source, learner = token.args
            return CopySkills(learner, source, self.unary())
        if kind == "QUANT":
            self.advance()
            sym, agent = token.args
            return _QUANT_CLASS[sym](agent, self.unary())
        if kind == "DUALQ":
            self.advance()
            sym, agent = token.args
            return dual(_QUANT_CLASS[sym], agent, self.unary())
        return self.primary()

    def primary(self) -> Formula:
        token = self.current
        if token.kind == "LPAREN":
            self.advance()
            f = self.biconditional()
            self.expect("RPAREN")
            return f
        if token.kind == "NAME":
            self.advance()
            if token.text == "true":
                return TOP
            if token.text == "false":
                return BOTTOM
            if token.text == RESERVED_ATOM:
                raise FormulaSyntaxError(f"atom {RESERVED_ATOM!r} is reserved", token.pos)
            return Atom(token.text)
        found = token.text or "end of input"
        raise FormulaSyntaxError(f"expected a formula, found {found!r}", token.pos)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` into a primitive AST, expanding all sugar."""
    return _Parser(text).parse()


def _names(items) -> str:
    return ",".join(sorted(items))


def render_formula(f: Formula) -> str:
    """Canonical text; ``parse_formula(render_formula(f)) == f``."""
    if f == TOP:
        return "true"
    if f == BOTTOM:
        return "false"
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return "~" + render_formula(f.operand)
    if isinstance(f, Implies):
        return f"({render_formula(f.left)} -> {render_formula(f.right)})"
    if isinstance(f, Knows):
        prefix = f"K_{f.agent}"
    elif isinstance(f, GroupOp):
        prefix = f"{_GROUP_TOKEN[type(f)]}_{{{_names(f.group)}}}"
    elif isinstance(f, SkillUpdate):
        prefix = f"({_UPDATE_TOKEN[type(f)]}{{{_names(f.skills)}}})_{f.agent}"
    elif isinstance(f, CopySkills):
        prefix = f"(=={f.source})_{f.learner}"
    elif isinstance(f, Quantifier):
        prefix = f"[{_QUANT_TOKEN[type(f)]}*]_{f.agent}"
    else:
        raise TypeError(f"not a formula node: {f!r}")
    return f"{prefix} {render_formula(f.operand)}"
