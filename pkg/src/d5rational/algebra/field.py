"""The coefficient field Q(a1, ..., a5, b).

Elements are either plain ``Fraction`` (constants) or :class:`ParamRat`.
Every ParamRat is reduced (gcd-free, monic denominator in grlex) and never
constant: constant results are demoted to ``Fraction`` so that equality is
structural across the two representations.  ``a0`` is not a symbol; it is
always expanded through the parameter constraint.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DegreeError, ZeroDivisor
from . import limits
from .mpoly import MPoly, exquo, gcd

SYMBOLS = ("a1", "a2", "a3", "a4", "a5", "b")
NSYM = len(SYMBOLS)
_ONE_EXP = (0,) * NSYM


def rat(n, d=1) -> Fraction:
    if d == 0:
        raise ZeroDivisor("division by zero")
    return Fraction(n, d)


def _poly_const(c):
    return MPoly.const(NSYM, c)


class ParamRat:
    """Reduced quotient of two polynomials in a1..a5, b over Q."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: MPoly, den: MPoly):
        # use make(); this constructor trusts its input
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def make(num: MPoly, den: MPoly = None):
        if den is None:
            den = _poly_const(1)
        if den.is_zero():
            raise ZeroDivisor("zero divisor")
        if num.is_zero():
            return Fraction(0)
        if den.is_constant():
            c = den.constant_value()
            num = num.scale(1 / c)
            den = _poly_const(1)
        else:
            g = gcd(num, den)
            if not g.is_constant():
                num = exquo(num, g)
                den = exquo(den, g)
            _, lc = den.leading()
            if lc != 1:
                num = num.scale(1 / lc)
                den = den.scale(1 / lc)
        if den.is_constant() and num.is_constant():
            return num.constant_value()
        cap = limits.max_alpha_degree()
        if num.total_degree() > cap or den.total_degree() > cap:
            raise DegreeError(f"parameter degree exceeds cap {cap}")
        return ParamRat(num, den)

    @staticmethod
    def symbol(name: str):
        return ParamRat(MPoly.gen(NSYM, SYMBOLS.index(name)), _poly_const(1))

    # helpers
    def is_poly(self):
        return self.den.is_constant()

    def _parts(self, other):
        if isinstance(other, ParamRat):
            return other.num, other.den
        if isinstance(other, (int, Fraction)):
            return _poly_const(other), None
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        on, od = p
        if od is None:
            if on.is_zero():
                return self
            return ParamRat.make(self.num + self.den * on, self.den)
        if self.den == od:
            return ParamRat.make(self.num + on, self.den)
        return ParamRat.make(self.num * od + on * self.den, self.den * od)

    __radd__ = __add__

    def __neg__(self):
        return ParamRat(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (ParamRat, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        on, od = p
        if od is None:
            c = on.constant_value()
            if c == 0:
                return Fraction(0)
            return ParamRat(self.num.scale(c), self.den)
        if self.is_poly() and od.is_constant():
            return ParamRat.make(self.num * on)
        return ParamRat.make(self.num * on, self.den * od)

    __rmul__ = __mul__

    def inverse(self):
        return ParamRat.make(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, ParamRat):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisor("zero divisor")
            return ParamRat(self.num.scale(1 / Fraction(other)), self.den)
        return NotImplemented

    def __rtruediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return ParamRat.make(self.num ** n, self.den ** n)

    def __eq__(self, other):
        if isinstance(other, ParamRat):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return False
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"ParamRat({kstr(self)})"

    def __str__(self):
        return kstr(self)


# generic helpers over K = Fraction | ParamRat

def kcoerce(x):
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_constant(x) -> bool:
    return not isinstance(x, ParamRat)


def ksubs(x, values: dict):
    """Substitute symbols by field elements, e.g. ``{"b": Fraction(0)}``."""
    if not isinstance(x, ParamRat):
        return x
    idx = {SYMBOLS.index(k): kcoerce(v) for k, v in values.items()}
    return _eval_poly(x.num, idx) / _eval_poly(x.den, idx)


def _eval_poly(p: MPoly, idx):
    total = Fraction(0)
    for e, c in p.terms.items():
        term = c
        rest = {}
        for i, k in enumerate(e):
            if not k:
                continue
            if i in idx:
                term = term * idx[i] ** k
            else:
                rest[i] = k
        if rest:
            f = [0] * NSYM
            for i, k in rest.items():
                f[i] = k
            term = term * ParamRat(MPoly._raw(NSYM, {tuple(f): Fraction(1)}), _poly_const(1))
        total = total + term
    return total


def free_symbols(x) -> set:
    if not isinstance(x, ParamRat):
        return set()
    used = x.num.variables() | x.den.variables()
    return {SYMBOLS[i] for i in used}


# printing

def _fmt_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def poly_str(p: MPoly, names=SYMBOLS) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        mag = abs(c)
        if not mono:
            body = _fmt_rat(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rat(mag)}*{mono}"
        pieces.append(("-" if c < 0 else "+", body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def kstr(x) -> str:
    """Canonical text of a field element, parseable by the grammar."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return _fmt_rat(x)
    if x.is_poly():
        return poly_str(x.num)
    num, den = poly_str(x.num), poly_str(x.den)
    if len(x.num.terms) > 1:
        num = f"({num})"
    if len(x.den.terms) > 1 or len(x.den.variables()) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def kstr_factor(x) -> str:
    """Text safe to use as a factor in a product."""
    s = kstr(x)
    if isinstance(x, ParamRat) and (len(x.num.terms) > 1 or not x.is_poly()):
        return f"({s})"
    return s
