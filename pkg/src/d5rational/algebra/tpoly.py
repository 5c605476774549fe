"""Univariate polynomials and rational functions in t over K = Q(a1..a5, b)."""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import DegreeError, ZeroDivisor
from . import limits
from .field import NSYM, ParamRat, kcoerce, kstr, kstr_factor, ksubs
from .mpoly import MPoly, exquo, gcd as mpoly_gcd

_SCALAR = (int, Fraction, ParamRat)
# printable without parentheses on either side of "/"
_ATOM = re.compile(r"^-?[A-Za-z0-9_*^/]+$")


def _trim(cs):
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


class TPoly:
    """Coefficients stored low degree first; the zero polynomial is ``()``."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        cs = _trim([kcoerce(x) for x in coeffs])
        cap = limits.max_t_degree()
        if len(cs) - 1 > cap:
            raise DegreeError(f"t-degree {len(cs) - 1} exceeds cap {cap}")
        self.c = cs

    @classmethod
    def const(cls, k):
        return cls((k,))

    @classmethod
    def t(cls):
        return cls((0, 1))

    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lc(self):
        return self.c[-1] if self.c else Fraction(0)

    def coeff(self, k):
        return self.c[k] if 0 <= k < len(self.c) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, TPoly):
            return self.c == other.c
        if isinstance(other, _SCALAR):
            return self.c == _trim([kcoerce(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if isinstance(other, _SCALAR):
            other = TPoly.const(other)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = out[i] + v
        return TPoly(out)

    __radd__ = __add__

    def __neg__(self):
        p = TPoly.__new__(TPoly)
        p.c = tuple(-x for x in self.c)
        return p

    def __sub__(self, other):
        return self + (-other if isinstance(other, TPoly) else -kcoerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALAR):
            if other == 0:
                return TPoly()
            return TPoly([x * other for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return TPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return TPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = TPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisor("zero divisor")
        r = list(self.c)
        db = other.degree()
        inv = 1 / other.lc() if not isinstance(other.lc(), Fraction) else Fraction(1) / other.lc()
        q = [Fraction(0)] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            coef = r[k]
            if coef == 0:
                continue
            f = coef * inv
            q[k - db] = f
            for j, y in enumerate(other.c):
                r[k - db + j] = r[k - db + j] - f * y
        return TPoly(q), TPoly(r[:db] if db > 0 else [])

    def monic(self):
        if self.is_zero():
            return self
        lc = self.lc()
        if lc == 1:
            return self
        inv = 1 / lc
        return TPoly([x * inv for x in self.c])

    def derivative(self):
        return TPoly([self.c[k] * k for k in range(1, len(self.c))])

    def __call__(self, value):
        acc = Fraction(0)
        for x in reversed(self.c):
            acc = acc * value + x
        return acc

    def compose(self, other: "TPoly") -> "TPoly":
        acc = TPoly()
        for x in reversed(self.c):
            acc = acc * other + x
        return acc

    def map_coeffs(self, fn):
        return TPoly([fn(x) for x in self.c])

    def __repr__(self):
        return f"TPoly({poly_text(self)})"


def poly_gcd(a: TPoly, b: TPoly) -> TPoly:
    if any(isinstance(x, ParamRat) for x in a.c + b.c):
        return _symbolic_gcd(a, b)
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


# Euclid over Q(a1..b) swells coefficient degrees, so symbolic gcds clear
# denominators and go through the multivariate gcd with t as an extra variable.

def _num_den(x):
    if isinstance(x, ParamRat):
        return x.num, x.den
    x = Fraction(x)
    return MPoly.const(NSYM, x), MPoly.const(NSYM, 1)


def _lift(p: TPoly) -> MPoly:
    dens = []
    for x in p.c:
        d = _num_den(x)[1]
        if not d.is_constant() and d not in dens:
            dens.append(d)
    common = MPoly.const(NSYM, 1)
    for d in dens:
        common = common * d
    terms = {}
    for k, x in enumerate(p.c):
        n, d = _num_den(x)
        for e, c in exquo(n * common, d).terms.items():
            terms[e + (k,)] = c
    return MPoly(NSYM + 1, terms)


def _lower(g: MPoly) -> TPoly:
    deg = max(e[-1] for e in g.terms)
    parts = [dict() for _ in range(deg + 1)]
    for e, c in g.terms.items():
        parts[e[-1]][e[:-1]] = c
    return TPoly([ParamRat.make(MPoly(NSYM, t)) if t else 0 for t in parts])


def _symbolic_gcd(a: TPoly, b: TPoly) -> TPoly:
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    g = mpoly_gcd(_lift(a), _lift(b))
    if all(e[-1] == 0 for e in g.terms):
        return TPoly.const(1)
    return _lower(g).monic()


def poly_text(p: TPoly) -> str:
    if p.is_zero():
        return "0"
    pieces = []
    for k in range(len(p.c) - 1, -1, -1):
        x = p.c[k]
        if x == 0:
            continue
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        neg = isinstance(x, Fraction) and x < 0
        mag = -x if neg else x
        if not mono:
            body = kstr(mag) if isinstance(mag, Fraction) else kstr_factor(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{kstr_factor(mag)}*{mono}"
        if body.startswith("-"):
            # single negative symbolic term such as -a2
            neg, body = not neg, body[1:]
        pieces.append(("-" if neg else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


class RatFun:
    """Reduced quotient num/den with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, TPoly):
            num = TPoly.const(num)
        if den is None:
            den = TPoly.const(1)
        elif not isinstance(den, TPoly):
            den = TPoly.const(den)
        if den.is_zero():
            raise ZeroDivisor("zero divisor")
        if reduce:
            if num.is_zero():
                den = TPoly.const(1)
            elif den.degree() > 0:
                g = poly_gcd(num, den)
                if g.degree() > 0:
                    num = num.divmod(g)[0]
                    den = den.divmod(g)[0]
            lc = den.lc()
            if lc != 1:
                inv = 1 / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def t(cls):
        return cls(TPoly.t())

    @classmethod
    def const(cls, k):
        return cls(TPoly.const(k))

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.degree() == 0

    def is_constant(self):
        return self.is_polynomial() and self.num.degree() <= 0

    def constant_value(self):
        return self.num.coeff(0)

    def _lift(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, TPoly):
            return RatFun(other)
        if isinstance(other, _SCALAR):
            return RatFun(TPoly.const(other), reduce=False)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den.degree() == 0:
                return RatFun(self.num + o.num, reduce=False)
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _SCALAR):
            if other == 0:
                return RatFun(TPoly())
            return RatFun(self.num * other, self.den, reduce=False)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den.degree() == 0 and o.den.degree() == 0:
            return RatFun(self.num * o.num, reduce=False)
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisor("zero divisor")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self):
        n, d = self.num, self.den
        if d.degree() == 0:
            return RatFun(n.derivative(), reduce=False)
        return RatFun(n.derivative() * d - n * d.derivative(), d * d)

    def compose(self, other: "RatFun") -> "RatFun":
        """Substitute t -> other."""
        def horner(p):
            acc = RatFun(TPoly())
            for x in reversed(p.c):
                acc = acc * other + x
            return acc
        return horner(self.num) / horner(self.den)

    def neg_t(self):
        """t -> -t."""
        flip = lambda p: TPoly([x if k % 2 == 0 else -x for k, x in enumerate(p.c)])
        return RatFun(flip(self.num), flip(self.den))

    def __call__(self, value):
        d = self.den(value)
        if d == 0:
            raise ZeroDivisor("zero divisor")
        return self.num(value) / d

    def map_coeffs(self, fn):
        return RatFun(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def subs_params(self, values: dict):
        return self.map_coeffs(lambda x: ksubs(x, values))

    def coefficients(self):
        return list(self.num.c) + list(self.den.c)

    def __str__(self):
        if self.den.degree() == 0:
            return poly_text(self.num)
        num, den = poly_text(self.num), poly_text(self.den)
        if not _ATOM.match(num):
            num = f"({num})"
        if not _ATOM.match(den) or "/" in den or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFun({self})"
