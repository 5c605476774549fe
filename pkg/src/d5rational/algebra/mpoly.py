"""Sparse multivariate polynomials.

Terms live in a dict keyed by exponent tuples.  Coefficients are any exact
field elements (``Fraction`` normally); gcd and exact division assume the
coefficient field is Q.  Monomials are ordered graded-lexicographically with
variable 0 the highest.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce

from ..errors import ZeroDivisor


def grlex_key(exp):
    return (sum(exp), exp)


class MPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms:
            self.terms = {e: c for e, c in terms.items() if c != 0}
        else:
            self.terms = {}
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # terms already free of zeros
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def const(cls, nvars, c):
        c = Fraction(c) if isinstance(c, int) else c
        return cls._raw(nvars, {(0,) * nvars: c} if c != 0 else {})

    @classmethod
    def gen(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(1)})

    def zero_like(self):
        return MPoly._raw(self.nvars, {})

    def one_like(self):
        return MPoly.const(self.nvars, 1)

    # predicates
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        if not self.terms:
            return True
        return len(self.terms) == 1 and not any(next(iter(self.terms)))

    def constant_value(self):
        """Constant coefficient (the value if the polynomial is constant)."""
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i):
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables(self):
        used = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used.add(i)
        return used

    def leading(self):
        """(exponent, coefficient) of the grlex-leading term."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other):
        if not isinstance(other, MPoly):
            if other == 0:
                return self
            other = MPoly.const(self.nvars, other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            v = res.get(e)
            if v is None:
                res[e] = c
            else:
                v = v + c
                if v == 0:
                    del res[e]
                else:
                    res[e] = v
        return MPoly._raw(self.nvars, res)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if c == 0:
            return MPoly._raw(self.nvars, {})
        if c == 1:
            return self
        return MPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return MPoly._raw(self.nvars, {})
        if len(a) < len(b):
            a, b = b, a
        res = {}
        get = res.get
        for e1, c1 in b.items():
            for e2, c2 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = get(e)
                res[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._raw(self.nvars, {e: c for e, c in res.items() if c != 0})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.one_like()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if other.is_constant():
                other = other.constant_value()
            else:
                return exquo(self, other)
        if other == 0:
            raise ZeroDivisor("zero divisor")
        return self.scale(1 / Fraction(other) if isinstance(other, int) else 1 / other)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.terms == other.terms
        try:
            return self.terms == MPoly.const(self.nvars, other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.sorted_terms()!r})"

    # calculus and evaluation
    def diff(self, i):
        res = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                res[tuple(f)] = c * k
        return MPoly._raw(self.nvars, res)

    def subs(self, values: dict):
        """Substitute ``{index: value}``; values may be scalars or MPoly."""
        out = self.zero_like()
        for e, c in self.terms.items():
            f = list(e)
            factor = c
            for i, v in values.items():
                k = f[i]
                if k:
                    f[i] = 0
                    factor = factor * (v ** k)
            mono = MPoly._raw(self.nvars, {tuple(f): Fraction(1)})
            out = out + mono * factor if isinstance(factor, MPoly) else out + mono.scale(factor)
        return out

    def evaluate(self, point):
        """Evaluate at a full point (sequence of ring elements)."""
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def monic(self):
        if not self.terms:
            return self
        _, lc = self.leading()
        return self.scale(1 / lc)

    def coefficient_lists(self, i):
        """View as a univariate polynomial in variable i: {degree: MPoly}."""
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            f = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[f] = c
        return {k: MPoly._raw(self.nvars, t) for k, t in out.items()}


def _mono_div(e1, e2):
    out = []
    for a, b in zip(e1, e2):
        if a < b:
            return None
        out.append(a - b)
    return tuple(out)


def exquo(f: MPoly, g: MPoly) -> MPoly:
    """Exact quotient f/g; raises ValueError when g does not divide f."""
    if g.is_zero():
        raise ZeroDivisor("zero divisor")
    ge, gc = g.leading()
    q = {}
    r = f
    while r.terms:
        re_, rc = r.leading()
        m = _mono_div(re_, ge)
        if m is None:
            raise ValueError("inexact polynomial division")
        c = rc / gc
        q[m] = q.get(m, 0) + c
        r = r - MPoly._raw(f.nvars, {m: c}) * g
    return MPoly(f.nvars, q)


def _shift(p: MPoly, i: int, k: int) -> MPoly:
    if k == 0:
        return p
    res = {}
    for e, c in p.terms.items():
        f = list(e)
        f[i] += k
        res[tuple(f)] = c
    return MPoly._raw(p.nvars, res)


def _lc_in(p: MPoly, i: int):
    d = p.degree_in(i)
    return d, p.coefficient_lists(i)[d]


def _prem(a: MPoly, b: MPoly, i: int) -> MPoly:
    db, lb = _lc_in(b, i)
    r = a
    while not r.is_zero():
        dr, lr = _lc_in(r, i)
        if dr < db:
            break
        r = r * lb - _shift(lr * b, i, dr - db)
    return r


def content(p: MPoly, i: int) -> MPoly:
    """gcd of the coefficients of p viewed as a polynomial in variable i."""
    coeffs = sorted(p.coefficient_lists(i).values(), key=lambda c: len(c.terms))
    g = coeffs[0].monic()
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = gcd(g, c)
    return g


def primitive(p: MPoly, i: int) -> MPoly:
    c = content(p, i)
    if c.is_constant():
        return p.monic()
    return exquo(p, c).monic()


def gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic (grlex) gcd over Q by content/primitive-part recursion."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    one = f.one_like()
    if f.is_constant() or g.is_constant():
        return one
    if f == g:
        return f.monic()
    vf, vg = f.variables(), g.variables()
    v = min(vf | vg)
    if v not in vf:
        return gcd(f, content(g, v))
    if v not in vg:
        return gcd(content(f, v), g)
    cf, cg = content(f, v), content(g, v)
    pf = f if cf.is_constant() else exquo(f, cf)
    pg = g if cg.is_constant() else exquo(g, cg)
    c = gcd(cf, cg)
    a, b = (pf, pg) if pf.degree_in(v) >= pg.degree_in(v) else (pg, pf)
    b = b.monic()
    while True:
        r = _prem(a, b, v)
        if r.is_zero():
            h = primitive(b, v)
            break
        if r.degree_in(v) == 0:
            h = one
            break
        a, b = b, primitive(r, v)
    return (c * h).monic()


def gcd_many(polys):
    return reduce(gcd, polys)
