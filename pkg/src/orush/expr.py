"""Recursive-descent parser for the tiny element syntax used on the command line.

Grammar (juxtaposition such as ``2x`` or ``3(1+w)`` means multiplication)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/" | <implicit>) unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := INT | NAME | "(" expr ")"

Names are looked up in an environment (``w`` for the square root of ``d``,
``x``/``y`` for algebra variables).  Division is allowed by integer literals
only and produces rational coefficients when the target ring accepts them.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Callable, Mapping

from orush.errors import OrushError, PreconditionError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PreconditionError(f"unexpected character {text[pos]!r} at position {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("int", num))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str, env: Mapping[str, Any], const: Callable[[Any], Any]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.env = env
        self.const = const

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self) -> tuple[str, str]:
        tok = self.peek()
        if tok is None:
            raise PreconditionError(f"unexpected end of expression {self.text!r}")
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        tok = self.take()
        if tok != ("op", op):
            raise PreconditionError(f"expected {op!r} in {self.text!r}, got {tok[1]!r}")

    def parse(self) -> Any:
        if not self.toks:
            raise PreconditionError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise PreconditionError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return val

    def expr(self) -> Any:
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self) -> Any:
        val = self.unary()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                val = val * self.unary()
            elif tok == ("op", "/"):
                self.take()
                kind, lit = self.take()
                if kind != "int" or int(lit) == 0:
                    raise PreconditionError(f"division only by nonzero integer literals in {self.text!r}")
                val = val * self.const(Fraction(1, int(lit)))
            elif tok is not None and (tok[0] == "name" or tok == ("op", "(")):
                val = val * self.unary()
            else:
                return val

    def unary(self) -> Any:
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Any:
        base = self.atom()
        if self.peek() in (("op", "^"), ("op", "**")):
            self.take()
            kind, lit = self.take()
            if kind != "int":
                raise PreconditionError(f"exponent must be a nonnegative integer in {self.text!r}")
            return base ** int(lit)
        return base

    def atom(self) -> Any:
        kind, lit = self.take()
        if kind == "int":
            return self.const(int(lit))
        if kind == "name":
            if lit in self.env:
                return self.env[lit]
            if all(ch in self.env for ch in lit):
                # juxtaposed one-letter names, e.g. "xy"
                val = self.env[lit[0]]
                for ch in lit[1:]:
                    val = val * self.env[ch]
                return val
            raise PreconditionError(f"unknown name {lit!r} in {self.text!r}")
        if lit == "(":
            val = self.expr()
            self.expect(")")
            return val
        raise PreconditionError(f"unexpected {lit!r} in {self.text!r}")


def parse_expression(text: str, env: Mapping[str, Any], const: Callable[[Any], Any]) -> Any:
    try:
        return _Parser(text, env, const).parse()
    except OrushError:
        raise
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise PreconditionError(f"cannot evaluate {text!r}: {exc}") from exc


def parse_scalar(text: str, ring: Any) -> Any:
    """Parse a base-ring scalar such as ``"1-w"`` or ``"-7"``."""
    env = {"w": ring.w} if hasattr(ring, "w") else {}
    return parse_expression(text, env, ring)
