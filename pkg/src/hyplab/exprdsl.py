"""Expression language for coefficient and root functions of x and n.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' factor)?
    atom   := NUMBER | IDENT | IDENT '(' expr (',' expr)* ')' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-2^2`` is -4, and it is
right-associative.  A single evaluator serves floats and numpy arrays.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np

VARIABLES = ("x", "n")
# name -> (min arity, max arity or None for unbounded)
FUNCTIONS = {
    "sqrt": (1, 1),
    "abs": (1, 1),
    "sin": (1, 1),
    "cos": (1, 1),
    "exp": (1, 1),
    "min": (2, None),
    "max": (2, None),
    "pow": (2, 2),
}


class ParseError(ValueError):
    def __init__(self, offset: int, expected: str, found: str):
        super().__init__(f"offset {offset}: expected {expected}, found {found}")
        self.offset = offset
        self.expected = expected
        self.found = found


class EvalError(ArithmeticError):
    def __init__(self, message: str, offset: int, node: "Expr"):
        super().__init__(f"offset {offset}: {message} in {to_string(node)}")
        self.offset = offset
        self.node = node


@dataclass(frozen=True)
class Num:
    value: float
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    left: "Expr"
    right: "Expr"
    offset: int = field(default=0, compare=False)
    op = "?"


class Add(BinOp):
    op = "+"


class Sub(BinOp):
    op = "-"


class Mul(BinOp):
    op = "*"


class Div(BinOp):
    op = "/"


class Pow(BinOp):
    op = "^"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]
    offset: int = field(default=0, compare=False)


Expr = Union[Num, Var, Neg, BinOp, Call]
_BINOPS = {"+": Add, "-": Sub, "*": Mul, "/": Div, "^": Pow}

_TOKEN = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^(),])"
)
_SPACE = re.compile(r"\s*")


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def tokenize(src: str) -> list[_Tok]:
    toks = []
    pos = _SPACE.match(src, 0).end()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(pos, "a token", repr(src[pos]))
        toks.append(_Tok(m.lastgroup, m.group(), pos))
        pos = _SPACE.match(src, m.end()).end()
    toks.append(_Tok("end", "", len(src)))
    return toks


def _describe(tok: _Tok) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


class _Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind != "op":
            raise ParseError(self.tok.offset, repr(text), _describe(self.tok))
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.offset, "operator or end of input", _describe(self.tok))
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.take()
            left = _BINOPS[t.text](left, self.term(), t.offset)
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.take()
            left = _BINOPS[t.text](left, self.factor(), t.offset)
        return left

    def factor(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            t = self.take()
            return Neg(self.factor(), t.offset)
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            t = self.take()
            return Pow(base, self.factor(), t.offset)
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.take()
            return Num(float(t.text), t.offset)
        if t.kind == "ident":
            self.take()
            if self.tok.kind == "op" and self.tok.text == "(":
                return self.call(t)
            if t.text not in VARIABLES:
                raise ParseError(t.offset, "variable x or n", f"unknown identifier {t.text!r}")
            return Var(t.text, t.offset)
        if t.kind == "op" and t.text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(t.offset, "operand", _describe(t))

    def call(self, name: _Tok) -> Expr:
        if name.text not in FUNCTIONS:
            raise ParseError(name.offset, "function name", f"unknown function {name.text!r}")
        self.expect("(")
        args = [self.expr()]
        while self.tok.kind == "op" and self.tok.text == ",":
            self.take()
            args.append(self.expr())
        self.expect(")")
        lo, hi = FUNCTIONS[name.text]
        if len(args) < lo or (hi is not None and len(args) > hi):
            want = str(lo) if lo == hi else f"at least {lo}"
            raise ParseError(name.offset, f"{want} argument(s) for {name.text}",
                             f"{len(args)} argument(s)")
        return Call(name.text, tuple(args), name.offset)


def parse(src: str) -> Expr:
    return _Parser(src).parse()


def to_string(e: Expr) -> str:
    """Canonical, fully parenthesized text; parse(to_string(e)) == e."""
    if isinstance(e, Num):
        return format(e.value, ".17g")
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_string(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_string(e.left)}{e.op}{to_string(e.right)})"
    if isinstance(e, Call):
        return f"{e.name}({','.join(to_string(a) for a in e.args)})"
    raise TypeError(f"not an expression: {e!r}")


def _check(ok, message: str, e: Expr) -> None:
    if not np.all(ok):
        raise EvalError(message, e.offset, e)


def _eval(e: Expr, env: dict):
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Neg):
        return -_eval(e.operand, env)
    if isinstance(e, BinOp):
        a, b = _eval(e.left, env), _eval(e.right, env)
        if isinstance(e, Add):
            return np.add(a, b)
        if isinstance(e, Sub):
            return np.subtract(a, b)
        if isinstance(e, Mul):
            return np.multiply(a, b)
        if isinstance(e, Div):
            _check(np.asarray(b) != 0, "division by zero", e)
            return np.divide(a, b)
        out = np.power(np.asarray(a, dtype=float), b)
        _check(~np.isnan(out) | np.isnan(a) | np.isnan(b), "power is undefined", e)
        return out
    if isinstance(e, Call):
        args = [_eval(a, env) for a in e.args]
        name = e.name
        if name == "sqrt":
            _check(np.asarray(args[0]) >= 0, "sqrt of a negative number", e)
            return np.sqrt(args[0])
        if name == "min":
            return _fold(np.minimum, args)
        if name == "max":
            return _fold(np.maximum, args)
        if name == "pow":
            out = np.power(np.asarray(args[0], dtype=float), args[1])
            _check(~np.isnan(out), "power is undefined", e)
            return out
        return {"abs": np.abs, "sin": np.sin, "cos": np.cos, "exp": np.exp}[name](args[0])
    raise TypeError(f"not an expression: {e!r}")


def _fold(f, args):
    out = args[0]
    for a in args[1:]:
        out = f(out, a)
    return out


def eval_expr(e: Expr | str, x, n):
    """Evaluate with real (or array) x and n; raises :class:`EvalError`."""
    if isinstance(e, str):
        e = parse(e)
    with np.errstate(all="ignore"):
        out = _eval(e, {"x": x, "n": n})
    if np.ndim(out) == 0 and np.ndim(x) == 0 and np.ndim(n) == 0:
        return float(out)
    return np.broadcast_to(out, np.broadcast(x, n).shape).astype(float)


def variables(e: Expr) -> set[str]:
    if isinstance(e, Var):
        return {e.name}
    if isinstance(e, Neg):
        return variables(e.operand)
    if isinstance(e, BinOp):
        return variables(e.left) | variables(e.right)
    if isinstance(e, Call):
        return set().union(*(variables(a) for a in e.args))
    return set()


__all__ = [
    "ParseError", "EvalError", "Expr", "Num", "Var", "Neg", "BinOp", "Add", "Sub",
    "Mul", "Div", "Pow", "Call", "parse", "to_string", "eval_expr", "tokenize",
    "variables", "FUNCTIONS", "VARIABLES",
]
