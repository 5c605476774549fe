"""Expression grammar.

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := ("-" | "+") unary | power
    power := atom ("^" unary)?
    atom  := INT | NAME | "(" expr ")"

Names are ``t``, ``a0``..``a5`` and ``b``; ``a0`` expands to
``1 - a1 - 2*a2 - 2*a3 - a4 - a5``.  ``**`` is accepted for ``^``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError
from .field import ParamRat, SYMBOLS
from .tpoly import RatFun, TPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def alpha0():
    s = {n: ParamRat.symbol(n) for n in SYMBOLS[:5]}
    return 1 - s["a1"] - 2 * s["a2"] - 2 * s["a3"] - s["a4"] - s["a5"]


def _name_value(name, pos):
    if name == "t":
        return RatFun.t()
    if name == "a0":
        return RatFun.const(alpha0())
    if name in SYMBOLS:
        return RatFun.const(ParamRat.symbol(name))
    raise ParseError(f"unknown symbol {name!r} at {pos}", token=name, position=pos)


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = text[pos:].strip()[:1]
            raise ParseError(f"unexpected character {bad!r} at {pos}", token=bad, position=pos)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(("num", int(num), start))
        elif name is not None:
            out.append(("name", name, start))
        else:
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, tok):
        kind, val, pos = tok
        shown = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"unexpected {shown} at {pos}", token=val, position=pos)

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs_tok = self.peek()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by zero at {rhs_tok[2]}", token="/", position=rhs_tok[2])
                val = val / rhs
        return val

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            v = self.unary()
            return -v if tok[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.peek()
            e = self.unary()
            if not e.is_constant() or not isinstance(e.constant_value(), Fraction) \
                    or e.constant_value().denominator != 1:
                raise ParseError(f"exponent must be an integer at {etok[2]}", token=etok[1], position=etok[2])
            n = int(e.constant_value())
            if n < 0 and base.is_zero():
                raise ParseError(f"division by zero at {etok[2]}", token="^", position=etok[2])
            return base ** n
        return base

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return RatFun(TPoly.const(Fraction(val)), reduce=False)
        if kind == "name":
            return _name_value(val, pos)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.fail(close)
            return inner
        self.fail(tok)


def parse_expr(text: str) -> RatFun:
    """Parse text into a reduced rational function of t."""
    if not isinstance(text, str):
        raise ParseError("expression must be a string")
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", position=0)
    val = p.expr()
    if p.peek()[0] != "end":
        p.fail(p.peek())
    return val


def parse_scalar(text: str):
    """Parse a t-free expression into a field element."""
    val = parse_expr(text)
    if not val.is_constant():
        raise ParseError(f"expected a t-free value, got {text!r}", token=text)
    return val.constant_value()


def to_text(value) -> str:
    """Canonical text; ``parse_expr(to_text(x)) == x``."""
    if isinstance(value, RatFun):
        return str(value)
    from .field import kstr
    return kstr(value)
