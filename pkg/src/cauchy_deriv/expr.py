"""A small language for analytic expressions in ``z``.

Grammar (lowest to highest precedence)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := ("-" | "+") unary | power
    power   := primary ("^" unary)?          right associative, so -z^2 = -(z^2)
    primary := NUMBER | "z" | "pi" | "e" | "i" | NAME "(" expr ")" | "(" expr ")"

Functions: exp log sin cos tan sec sinh cosh sqrt. Logs, square roots and
non-integer powers ``w^p = exp(p log w)`` use principal branches. There is no
implicit multiplication: ``2z`` is an error.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import CauchyError, EvaluationError
from .quad import AnalyticFunction

FUNCTIONS = {
    "exp": np.exp,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sec": lambda w: 1.0 / np.cos(w),
    "sinh": np.sinh,
    "cosh": np.cosh,
    "sqrt": np.sqrt,
}
CONSTANTS = {"pi": math.pi, "e": math.e, "i": 1j}
MAX_DEPTH = 100

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_START = frozenset({"number", "z", "constant", "function", "(", "-", "+"})


class ParseError(CauchyError, ValueError):
    """Syntax error at byte ``offset``; ``expected`` lists acceptable tokens."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


class UnknownIdentifierError(ParseError):
    pass


# ------------------------------------------------------------------ AST

@dataclass(frozen=True)
class Num:
    value: complex
    pos: int


@dataclass(frozen=True)
class Var:
    pos: int


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"
    pos: int


Node = Union[Num, Var, Unary, Binary, Call]


@dataclass(frozen=True)
class Expression:
    text: str
    root: Node

    def __call__(self, z):
        return evaluate(self, z)

    def __str__(self) -> str:
        return to_text(self.root)


def to_text(node: Node) -> str:
    if isinstance(node, Num):
        v = node.value
        return repr(v.real) if v.imag == 0 else f"({v!r})"
    if isinstance(node, Var):
        return "z"
    if isinstance(node, Unary):
        return f"({node.op}{to_text(node.operand)})"
    if isinstance(node, Binary):
        return f"({to_text(node.left)}{node.op}{to_text(node.right)})"
    return f"{node.name}({to_text(node.arg)})"


# ---------------------------------------------------------------- lexer

@dataclass(frozen=True)
class _Tok:
    kind: str  # number, name, op, end
    text: str
    pos: int   # byte offset


def _tokenize(text: str) -> list:
    toks = []
    i = 0
    byte = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            byte += len(c.encode("utf-8", "surrogatepass"))
            i += 1
            continue
        m = _NUMBER.match(text, i) if (c.isdigit() or c == ".") and c.isascii() else None
        if m:
            toks.append(_Tok("number", m.group(), byte))
        elif c.isascii() and (c.isalpha() or c == "_"):
            m = _NAME.match(text, i)
            toks.append(_Tok("name", m.group(), byte))
        elif c in "+-*/^()":
            toks.append(_Tok("op", c, byte))
            byte += 1
            i += 1
            continue
        else:
            raise ParseError(f"unexpected character {c!r}", byte, _START)
        byte += len(m.group())
        i = m.end()
    toks.append(_Tok("end", "", byte))
    return toks


# --------------------------------------------------------------- parser

class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def _enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.tok.pos)

    def expr(self) -> Node:
        self._enter()
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            node = Binary(t.text, node, self.term(), t.pos)
        self.depth -= 1
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.advance()
            node = Binary(t.text, node, self.unary(), t.pos)
        return node

    def unary(self) -> Node:
        if self.tok.kind == "op" and self.tok.text in "+-":
            self._enter()
            t = self.advance()
            operand = self.unary()
            self.depth -= 1
            return operand if t.text == "+" else Unary("-", operand, t.pos)
        return self.power()

    def power(self) -> Node:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self._enter()
            t = self.advance()
            node = Binary("^", base, self.unary(), t.pos)
            self.depth -= 1
            return node
        return base

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Num(complex(float(t.text)), t.pos)
        if t.kind == "name":
            self.advance()
            if t.text == "z":
                return Var(t.pos)
            if t.text in CONSTANTS:
                return Num(complex(CONSTANTS[t.text]), t.pos)
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(t.text, arg, t.pos)
            raise UnknownIdentifierError(f"unknown identifier {t.text!r}", t.pos,
                                         {"z", *CONSTANTS, *FUNCTIONS})
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.pos, _START)

    def expect(self, text: str):
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        what = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
        raise ParseError(f"unexpected {what}", self.tok.pos, {text})


def parse(text) -> Expression:
    """Parse ``text`` (str or bytes) into an :class:`Expression`."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    p = _Parser(_tokenize(text))
    root = p.expr()
    if p.tok.kind != "end":
        raise ParseError(f"unexpected {p.tok.text!r}", p.tok.pos, {"+", "-", "*", "/", "^", "end of input"})
    return Expression(text, root)


# ------------------------------------------------------------ evaluator

def _check(value, node, what: str):
    arr = np.asarray(value)
    if not np.all(np.isfinite(arr)):
        raise EvaluationError(f"{what} is not finite at offset {node.pos}")
    return value


def _integer_exponent(p):
    """The common integer value of a constant exponent, else None."""
    arr = np.asarray(p)
    first = arr.flat[0]
    if first.imag != 0 or first.real != int(first.real) or abs(first.real) > 1024:
        return None
    if not np.all(arr == first):
        return None
    return int(first.real)


def _eval(node: Node, z):
    if isinstance(node, Num):
        return node.value + 0 * z
    if isinstance(node, Var):
        return z
    if isinstance(node, Unary):
        return -_eval(node.operand, z)
    if isinstance(node, Call):
        arg = _eval(node.arg, z)
        with np.errstate(all="ignore"):
            if node.name == "log" and np.any(np.asarray(arg) == 0):
                raise EvaluationError(f"log of zero at offset {node.pos}")
            return _check(FUNCTIONS[node.name](arg), node, f"{node.name}(...)")
    left = _eval(node.left, z)
    if node.op == "^":
        p = _eval(node.right, z)
        k = _integer_exponent(p)
        with np.errstate(all="ignore"):
            if k is not None:
                if k < 0 and np.any(np.asarray(left) == 0):
                    raise EvaluationError(f"zero to a negative power at offset {node.pos}")
                return _check(left ** k, node, "power")
            zero = np.asarray(left) == 0
            if np.any(zero & ~(np.real(p) > 0)):
                raise EvaluationError(f"zero to a non-positive power at offset {node.pos}")
            out = np.where(zero, 0j, np.exp(p * np.log(np.where(zero, 1.0, left))))
            return _check(out if np.ndim(out) else complex(out), node, "power")
    right = _eval(node.right, z)
    with np.errstate(all="ignore"):
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return _check(left * right, node, "product")
        if np.any(np.asarray(right) == 0):
            raise EvaluationError(f"division by zero at offset {node.pos}")
        return _check(left / right, node, "quotient")


def evaluate(expr: Expression, z):
    """Evaluate at a complex scalar or array ``z``."""
    scalar = np.ndim(z) == 0
    zz = np.asarray(z, dtype=complex)
    out = np.asarray(_eval(expr.root, zz), dtype=complex)
    if out.shape != zz.shape:
        out = np.broadcast_to(out, zz.shape).copy()
    return complex(out) if scalar else out


def as_function(expr, radius_of_convergence: float = math.inf, name: str = None) -> AnalyticFunction:
    """Wrap an expression (or its text) as an :class:`AnalyticFunction`."""
    if not isinstance(expr, Expression):
        expr = parse(expr)
    return AnalyticFunction(name or expr.text, evaluate=lambda z: evaluate(expr, z),
                            radius_of_convergence=radius_of_convergence)
