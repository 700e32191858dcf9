"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insensitive, explicit ``*`` required)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | base ('^' uint)?
    base   := '(' expr ')' | var | uint ('/' uint)?
    var    := 'x1' | 'x2' | 'T' | 'U'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ContextError, ExprSyntaxError, LiteralError
from .field import FieldSpec
from .poly import Poly2, PolyT, PolyTU

CONTEXTS = {"poly2": Poly2, "polyT": PolyT, "polyTU": PolyTU}


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Neg, BinOp, Pow]

_VARS = ("x1", "x2", "T", "U")


@dataclass(frozen=True)
class Token:
    kind: str  # 'int', 'var', 'op', 'eof'
    text: str
    pos: int


def tokenize(text: str) -> list:
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch.isdigit():
            end = pos
            while end < n and text[end].isdigit():
                end += 1
            if end < n and (text[end].isalpha() or text[end] == "_"):
                raise ExprSyntaxError("implicit multiplication is not allowed", end, ["*"])
            tokens.append(Token("int", text[pos:end], pos))
            pos = end
        elif ch.isalpha() or ch == "_":
            end = pos
            while end < n and (text[end].isalnum() or text[end] == "_"):
                end += 1
            name = text[pos:end]
            if name not in _VARS:
                raise ExprSyntaxError(f"unknown identifier {name!r}", pos, _VARS)
            tokens.append(Token("var", name, pos))
            pos = end
        elif ch in "+-*^/()":
            tokens.append(Token("op", ch, pos))
            pos += 1
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", pos)
    tokens.append(Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _take(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def _is_op(self, *ops) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Expr:
        if self.tok.kind == "eof":
            raise ExprSyntaxError("empty expression", self.tok.pos, ["expression"])
        node = self.expr()
        if self.tok.kind != "eof":
            expected = ["+", "-", "*", "^", "end of input"]
            if self.tok.kind in ("var", "int") or self._is_op("("):
                raise ExprSyntaxError("implicit multiplication is not allowed", self.tok.pos, ["*"])
            raise ExprSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos, expected)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self._is_op("+", "-"):
            op = self._take().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self._is_op("*"):
            self._take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        if self._is_op("-"):
            self._take()
            return Neg(self.factor())
        if self._is_op("+"):
            self._take()
            return self.factor()
        base = self.base()
        if self._is_op("^"):
            self._take()
            t = self.tok
            if t.kind != "int":
                raise ExprSyntaxError("exponent must be a nonnegative integer literal", t.pos, ["uint"])
            self._take()
            return Pow(base, int(t.text))
        return base

    def base(self) -> Expr:
        t = self.tok
        if self._is_op("("):
            self._take()
            node = self.expr()
            if not self._is_op(")"):
                raise ExprSyntaxError("unbalanced parenthesis", self.tok.pos, [")"])
            self._take()
            return node
        if t.kind == "var":
            self._take()
            return Var(t.text)
        if t.kind == "int":
            self._take()
            num = int(t.text)
            if self._is_op("/"):
                self._take()
                d = self.tok
                if d.kind != "int":
                    raise ExprSyntaxError("denominator must be an integer literal", d.pos, ["uint"])
                self._take()
                den = int(d.text)
                if den == 0:
                    raise LiteralError("zero denominator", d.pos)
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        expected = ["(", "x1", "x2", "T", "U", "number"]
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {what}", t.pos, expected)


def parse_ast(text: str) -> Expr:
    return _Parser(text).parse()


def evaluate(node: Expr, spec: FieldSpec, cls=Poly2):
    if isinstance(node, Num):
        if spec.is_prime_field and node.value.denominator % spec.modulus == 0:
            raise LiteralError(f"denominator of {node.value} vanishes in {spec}")
        return cls.const(spec, node.value)
    if isinstance(node, Var):
        if node.name not in cls.VARS:
            raise ContextError(f"variable {node.name} not allowed in a {cls.__name__} position")
        return cls.var(spec, node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, spec, cls)
    if isinstance(node, Pow):
        return evaluate(node.base, spec, cls) ** node.exponent
    left = evaluate(node.left, spec, cls)
    right = evaluate(node.right, spec, cls)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    return left * right


def parse(text: str, spec: FieldSpec, context: str = "poly2"):
    """Parse ``text`` into a polynomial of the ring named by ``context``."""
    try:
        cls = CONTEXTS[context]
    except KeyError:
        raise ValueError(f"unknown context {context!r}; use one of {sorted(CONTEXTS)}") from None
    return evaluate(parse_ast(text), spec, cls)


def parse_poly2(text: str, spec: FieldSpec) -> Poly2:
    return parse(text, spec, "poly2")


def parse_polyT(text: str, spec: FieldSpec) -> PolyT:
    return parse(text, spec, "polyT")
