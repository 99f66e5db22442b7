"""Tiny arithmetic grammar for user-supplied nonlinearities g(u).

Supports + - * / ^ (power, right-associative), unary minus, parentheses,
the constant pi, the variable u, and the functions sin, cos, arctan, ln,
abs.  Expressions are parsed to a small tuple tree that can be evaluated on
numpy arrays and differentiated symbolically, so g and g' always come from
the same source text.
"""

from __future__ import annotations

import math
import re

import numpy as np

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)

_FUNCTIONS = {
    "sin": np.sin,
    "cos": np.cos,
    "arctan": np.arctan,
    "ln": np.log,
    "abs": np.abs,
}

# sign appears only in derivatives of abs, never in parsed input
_EVAL_FUNCTIONS = {**_FUNCTIONS, "sign": np.sign}


class ExpressionError(ValueError):
    """Raised for syntax errors or unknown names in a g(u) expression."""


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ExpressionError(
                f"unexpected character {text[pos]!r} at position {pos} in {text!r}"
            )
        pos = m.end()
        tok = m.group("num") or m.group("name") or m.group("op")
        tokens.append("^" if tok == "**" else tok)
    if not tokens:
        raise ExpressionError("empty expression")
    return tokens


class _Parser:
    """Recursive descent over the token list; produces a tuple tree."""

    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.take()
        if got != tok:
            raise ExpressionError(f"expected {tok!r}, got {got!r}")

    def parse(self):
        tree = self.expr()
        if self.peek() is not None:
            raise ExpressionError(f"trailing input starting at {self.peek()!r}")
        return tree

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return ("neg", self.unary())
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            return ("pow", base, self.unary())
        return base

    def atom(self):
        tok = self.take()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        if tok == "(":
            node = self.expr()
            self.expect(")")
            return node
        if re.fullmatch(r"\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?", tok):
            return ("num", float(tok))
        if tok == "u":
            return ("var",)
        if tok == "pi":
            return ("num", math.pi)
        if tok in _FUNCTIONS:
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return (tok, arg)
        raise ExpressionError(f"unknown name {tok!r} (variable is 'u', constant 'pi')")


def parse(text: str):
    """Parse an expression string into a tree."""
    return _Parser(_tokenize(text)).parse()


def evaluate(tree, u):
    """Evaluate a tree at u (scalar or numpy array)."""
    op = tree[0]
    if op == "num":
        return tree[1] if np.isscalar(u) else np.full(np.shape(u), tree[1])
    if op == "var":
        return u
    if op == "neg":
        return -evaluate(tree[1], u)
    if op in _EVAL_FUNCTIONS:
        return _EVAL_FUNCTIONS[op](evaluate(tree[1], u))
    a = evaluate(tree[1], u)
    b = evaluate(tree[2], u)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        return a ** b
    raise ExpressionError(f"corrupt tree node {op!r}")


def _is_num(tree, value=None):
    return tree[0] == "num" and (value is None or tree[1] == value)


def _add(a, b):
    if _is_num(a) and _is_num(b):
        return ("num", a[1] + b[1])
    if _is_num(a, 0.0):
        return b
    if _is_num(b, 0.0):
        return a
    return ("add", a, b)


def _sub(a, b):
    if _is_num(a) and _is_num(b):
        return ("num", a[1] - b[1])
    if _is_num(b, 0.0):
        return a
    if _is_num(a, 0.0):
        return ("neg", b)
    return ("sub", a, b)


def _mul(a, b):
    if _is_num(a) and _is_num(b):
        return ("num", a[1] * b[1])
    if _is_num(a, 0.0) or _is_num(b, 0.0):
        return ("num", 0.0)
    if _is_num(a, 1.0):
        return b
    if _is_num(b, 1.0):
        return a
    return ("mul", a, b)


def _div(a, b):
    if _is_num(a, 0.0):
        return ("num", 0.0)
    if _is_num(b, 1.0):
        return a
    return ("div", a, b)


def differentiate(tree):
    """Symbolic derivative with respect to u, lightly simplified."""
    op = tree[0]
    if op == "num":
        return ("num", 0.0)
    if op == "var":
        return ("num", 1.0)
    if op == "neg":
        d = differentiate(tree[1])
        return ("num", 0.0) if _is_num(d, 0.0) else ("neg", d)
    if op == "add":
        return _add(differentiate(tree[1]), differentiate(tree[2]))
    if op == "sub":
        return _sub(differentiate(tree[1]), differentiate(tree[2]))
    if op == "mul":
        a, b = tree[1], tree[2]
        return _add(_mul(differentiate(a), b), _mul(a, differentiate(b)))
    if op == "div":
        a, b = tree[1], tree[2]
        num = _sub(_mul(differentiate(a), b), _mul(a, differentiate(b)))
        return _div(num, ("pow", b, ("num", 2.0)))
    if op == "pow":
        base, expo = tree[1], tree[2]
        db = differentiate(base)
        if _is_num(expo):
            # constant exponent: e * base^(e-1) * base'
            return _mul(
                _mul(expo, ("pow", base, ("num", expo[1] - 1.0))), db
            )
        de = differentiate(expo)
        # general: base^expo * (expo' ln(base) + expo * base'/base)
        inner = _add(_mul(de, ("ln", base)), _mul(expo, _div(db, base)))
        return _mul(tree, inner)
    if op == "sin":
        return _mul(("cos", tree[1]), differentiate(tree[1]))
    if op == "cos":
        return _mul(("neg", ("sin", tree[1])), differentiate(tree[1]))
    if op == "arctan":
        denom = _add(("num", 1.0), ("pow", tree[1], ("num", 2.0)))
        return _div(differentiate(tree[1]), denom)
    if op == "ln":
        return _div(differentiate(tree[1]), tree[1])
    if op == "abs":
        # weak derivative sign(f) f'; undefined at f = 0
        return _mul(("sign", tree[1]), differentiate(tree[1]))
    raise ExpressionError(f"corrupt tree node {op!r}")


def compile_expression(text: str):
    """Return (g, g_prime) callables for an expression in u."""
    tree = parse(text)
    dtree = differentiate(tree)

    def g(u, _tree=tree):
        return evaluate(_tree, u)

    def g_prime(u, _tree=dtree):
        return evaluate(_tree, u)

    return g, g_prime
