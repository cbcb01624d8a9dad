"""Parser for forcing expressions such as ``t*x1^2 + t^2*x2 + x1*x2^2``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' uint)?
    base   := rational | var | '(' expr ')'

Rational literals are ``p``, ``p/q`` or decimals (``0.25``, ``1e-3``), all
converted exactly.  Implicit multiplication is rejected.  Unary minus binds
looser than ``^`` so that ``-t^2`` means ``-(t^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polyalg import MultiPoly

__all__ = [
    "ExprAst",
    "ExprError",
    "ExponentError",
    "UnknownVariableError",
    "parse_expr",
    "parse_poly",
    "to_poly",
]


class ExprError(ValueError):
    """Syntax error; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ExprError):
    pass


class ExponentError(ExprError):
    pass


@dataclass(frozen=True)
class ExprAst:
    kind: str  # number | var | add | sub | mul | neg | pow
    value: object = None
    children: tuple["ExprAst", ...] = ()

    def __str__(self) -> str:
        k = self.kind
        if k == "number":
            v = self.value
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        if k == "var":
            return self.value
        if k == "neg":
            return f"(-{self.children[0]})"
        if k == "pow":
            return f"({self.children[0]})^{self.value}"
        op = {"add": " + ", "sub": " - ", "mul": "*"}[k]
        return "(" + op.join(str(c) for c in self.children) + ")"


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _number(tok: str, pos: int) -> Fraction:
    if "/" in tok:
        p, q = tok.split("/")
        if not re.fullmatch(r"\d+", p):
            raise ExprError("rational literal p/q needs an integer numerator", pos)
        if int(q) == 0:
            raise ExprError("zero denominator", pos)
        return Fraction(int(p), int(q))
    return Fraction(tok)


class _Parser:
    def __init__(self, text: str, d: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.d = d
        self.vars = {f"x{k}" for k in range(1, d + 1)} | {"t"}

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, tok, pos = self.take()
        if tok != value:
            found = "end of input" if kind == "end" else repr(tok)
            raise ExprError(f"expected {value!r}, found {found}", pos)

    def parse(self) -> ExprAst:
        node = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ExprError(f"unexpected {tok!r}", pos)
        return node

    def expr(self) -> ExprAst:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = ExprAst("add" if op == "+" else "sub", None, (node, self.term()))
        return node

    def term(self) -> ExprAst:
        node = self.factor()
        while True:
            kind, tok, pos = self.peek()
            if tok == "*":
                self.take()
                node = ExprAst("mul", None, (node, self.factor()))
            elif kind in ("num", "name") or tok == "(":
                raise ExprError("implicit multiplication is not allowed", pos)
            else:
                return node

    def factor(self) -> ExprAst:
        if self.peek()[1] == "-":
            self.take()
            return ExprAst("neg", None, (self.factor(),))
        node = self.base()
        if self.peek()[1] == "^":
            self.take()
            kind, tok, pos = self.take()
            if tok == "-":
                raise ExponentError("negative exponent", pos)
            if kind != "num":
                raise ExprError("exponent must be a non-negative integer literal", pos)
            if not tok.isdigit():
                raise ExponentError(f"fractional exponent {tok!r}", pos)
            if self.peek()[1] == "^":
                raise ExprError("chained exponents need parentheses", self.peek()[2])
            node = ExprAst("pow", int(tok), (node,))
        return node

    def base(self) -> ExprAst:
        kind, tok, pos = self.take()
        if kind == "num":
            return ExprAst("number", _number(tok, pos))
        if kind == "name":
            if tok not in self.vars:
                raise UnknownVariableError(f"unknown variable {tok!r} for d={self.d}", pos)
            return ExprAst("var", tok)
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(tok)
        raise ExprError(f"expected a number, variable or '(', found {found}", pos)


def parse_expr(text: str, d: int) -> ExprAst:
    if d not in (1, 2, 3):
        raise ValueError(f"unsupported dimension {d}")
    return _Parser(text, d).parse()


def to_poly(node: ExprAst, d: int) -> MultiPoly:
    """Exact lowering of an AST to a MultiPoly in d space variables."""
    k = node.kind
    if k == "number":
        return MultiPoly.const(d, node.value)
    if k == "var":
        return MultiPoly.var(d, node.value)
    if k == "neg":
        return -to_poly(node.children[0], d)
    if k == "pow":
        return to_poly(node.children[0], d) ** node.value
    a, b = (to_poly(c, d) for c in node.children)
    if k == "add":
        return a + b
    if k == "sub":
        return a - b
    return a * b


def parse_poly(text: str, d: int) -> MultiPoly:
    return to_poly(parse_expr(text, d), d)
