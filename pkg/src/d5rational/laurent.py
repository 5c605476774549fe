"""Laurent expansions at t = infinity, 0 and c, and formal branch growth.

Internally every expansion uses a local variable s with s = 1/t at
infinity, s = t at 0 and s = t - c at c, so series are always ascending in
s.  Truncated series carry an absolute precision: coefficients of s^e with
e < prec are exact.  Multiplying series propagates precision, which is what
makes the undetermined-coefficient solver safe: it only ever reads residual
coefficients that no truncated term can still change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import MPoly, ParamRat, RatFun, TPoly, kcoerce, kstr
from .algebra.field import NSYM
from .algebra.mpoly import exquo, gcd
from .algebra.tpoly import poly_gcd
from .errors import BranchError, ChartError, NotASolution
from .system import Params, Solution, hamiltonian, hamiltonian_eval, residual, rhs_finite

INF = "inf"


def _norm_point(point):
    if point in (INF, "infinity", "oo", math.inf):
        return INF
    return kcoerce(point) if not isinstance(point, str) else Fraction(point)


# truncated series in the local variable

class Series:
    """sum c[k] s^(val + k), exact below ``prec`` (None: exact everywhere)."""

    __slots__ = ("val", "c", "prec")

    def __init__(self, val, coeffs, prec=None):
        coeffs = list(coeffs)
        if prec is not None:
            coeffs = coeffs[: max(prec - val, 0)]
        self.val = val
        self.c = coeffs
        self.prec = prec

    @classmethod
    def scalar(cls, k):
        return cls(0, [k])

    def coeff(self, e):
        if self.prec is not None and e >= self.prec:
            raise ValueError(f"coefficient of s^{e} is beyond the precision {self.prec}")
        k = e - self.val
        return self.c[k] if 0 <= k < len(self.c) else 0

    def top(self):
        """First exponent not stored (exclusive upper bound)."""
        return self.val + len(self.c)

    @staticmethod
    def _lift(o):
        return o if isinstance(o, Series) else Series(0, [o])

    def __add__(self, other):
        o = self._lift(other)
        prec = _min_prec(self.prec, o.prec)
        lo = min(self.val, o.val)
        hi = max(self.top(), o.top())
        if prec is not None:
            hi = min(hi, prec)
        out = []
        for e in range(lo, hi):
            a = self.c[e - self.val] if 0 <= e - self.val < len(self.c) else 0
            b = o.c[e - o.val] if 0 <= e - o.val < len(o.c) else 0
            out.append(a + b)
        return Series(lo, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.val, [-x for x in self.c], self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Series):
            if other == 0 and not isinstance(other, MPoly):
                return Series(self.val, [], self.prec)
            return Series(self.val, [x * other for x in self.c], self.prec)
        a, b = self, other
        val = a.val + b.val
        prec = _min_prec(None if a.prec is None else b.val + a.prec,
                         None if b.prec is None else a.val + b.prec)
        n = len(a.c) + len(b.c) - 1
        if prec is not None:
            n = min(n, prec - val)
        out = [0] * max(n, 0)
        for i, x in enumerate(a.c):
            if i >= n:
                break
            if _is_zero(x):
                continue
            for j, y in enumerate(b.c):
                if i + j >= n:
                    break
                if _is_zero(y):
                    continue
                out[i + j] = out[i + j] + x * y
        return Series(val, out, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        out = Series.scalar(Fraction(1))
        for _ in range(n):
            out = out * self
        return out


def _is_zero(x):
    if isinstance(x, MPoly):
        return x.is_zero()
    return x == 0


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def local_t(point) -> Series:
    if point == INF:
        return Series(-1, [Fraction(1)])
    if point == 0:
        return Series(1, [Fraction(1)])
    return Series(0, [point, Fraction(1)])


def theta(f: Series, point) -> Series:
    """t d/dt in the local variable."""
    if point == INF:
        return Series(f.val, [-(f.val + k) * x for k, x in enumerate(f.c)], f.prec)
    if point == 0:
        return Series(f.val, [(f.val + k) * x for k, x in enumerate(f.c)], f.prec)
    d = Series(f.val - 1, [(f.val + k) * x for k, x in enumerate(f.c)],
               None if f.prec is None else f.prec - 1)
    return d * local_t(point)


def _to_local(e, point):
    return -e if point == INF else e


# expansion of rational functions

def _power_series_div(a, b, n):
    """First n coefficients of a/b for coefficient lists with b[0] != 0."""
    inv = 1 / kcoerce(b[0])
    out = []
    for k in range(n):
        acc = a[k] if k < len(a) else 0
        for j in range(1, min(k, len(b) - 1) + 1):
            acc = acc - b[j] * out[k - j]
        out.append(acc * inv)
    return out


def _split_zero(p: TPoly):
    m = 0
    while m < len(p.c) and p.c[m] == 0:
        m += 1
    return m, list(p.c[m:])


def local_series(f: RatFun, point, n: int):
    """(val, coefficients) of f in the local variable, n coefficients from val."""
    point = _norm_point(point)
    if f.is_zero():
        return None, [Fraction(0)] * n
    if point == INF:
        num, den = list(reversed(f.num.c)), list(reversed(f.den.c))
        val = f.den.degree() - f.num.degree()
        return val, _power_series_div(num, den, n)
    shift = TPoly((point, 1))
    num = f.num.compose(shift) if point != 0 else f.num
    den = f.den.compose(shift) if point != 0 else f.den
    kn, nc = _split_zero(num)
    kd, dc = _split_zero(den)
    return kn - kd, _power_series_div(nc, dc, n)


@dataclass(frozen=True)
class LaurentSeries:
    """Expansion coefficients at a point, written in t.

    At infinity ``coeffs[k]`` multiplies t^(lead - k); at a finite point c it
    multiplies (t - c)^(lead + k).
    """

    point: object
    lead: int
    coeffs: tuple

    def coeff(self, n: int):
        k = self.lead - n if self.point == INF else n - self.lead
        if k < 0:
            return Fraction(0)
        if k >= len(self.coeffs):
            raise IndexError(f"coefficient of exponent {n} is beyond the computed order")
        return self.coeffs[k]

    def exponents(self):
        step = -1 if self.point == INF else 1
        return [self.lead + step * k for k in range(len(self.coeffs))]

    def to_json(self):
        return [[e, kstr(c)] for e, c in zip(self.exponents(), self.coeffs)]


def _aligned_lead(actual, point):
    if actual is None:
        return 0
    return max(actual, 0) if point == INF else min(actual, 0)


def expand_ratfun(f: RatFun, point, order: int, lead=None) -> LaurentSeries:
    point = _norm_point(point)
    val, _ = local_series(f, point, 1)
    actual = None if val is None else (-val if point == INF else val)
    if lead is None:
        lead = _aligned_lead(actual, point)
    lo = _to_local(lead, point)
    if val is None:
        return LaurentSeries(point, lead, tuple([Fraction(0)] * order))
    need = lo - val + order
    _, cs = local_series(f, point, max(need, 0))
    out = []
    for k in range(order):
        idx = lo + k - val
        out.append(cs[idx] if 0 <= idx < len(cs) else Fraction(0))
    if lo > val and any(c != 0 for c in cs[: lo - val]):
        raise ValueError("requested lead cuts off nonzero terms")
    return LaurentSeries(point, lead, tuple(out))


def coefficient(f: RatFun, point, n: int):
    """Coefficient of t^n (at infinity) or (t - c)^n (at c) in the expansion of f."""
    point = _norm_point(point)
    val, _ = local_series(f, point, 1)
    if val is None:
        return Fraction(0)
    lead = -val if point == INF else val
    k = lead - n if point == INF else n - lead
    if k < 0:
        return Fraction(0)
    return expand_ratfun(f, point, k + 1, lead=lead).coeffs[k]


def expand(sol: Solution, point, order: int, lead=None):
    """Expansions of (x, y, z, w) at a point.

    Unless ``lead`` is given, the series starts at the pole order, or at t^0
    when the component is holomorphic there, so coefficient indices line up
    with the usual a_{inf,0}, a_{inf,-1}, ... bookkeeping.
    """
    if sol.kind != "finite":
        raise ChartError("expansions are taken of finite solutions")
    leads = lead if isinstance(lead, (tuple, list)) else [lead] * 4
    return tuple(expand_ratfun(c, point, order, l) for c, l in zip(sol.comps, leads))


# branch growth

@dataclass(frozen=True)
class BranchData:
    """Leading exponents (in t) of x, y, z, w and prescribed coefficients.

    ``given`` maps (component index, t-exponent) to a value.
    """

    leads: tuple
    given: dict = field(default_factory=dict)
    name: str = ""

    def __hash__(self):
        return hash((self.leads, tuple(sorted(self.given.items(), key=repr)), self.name))


def _unknown_poly(nv, k):
    return MPoly.gen(nv, k)


def _as_poly(x, nv):
    return x if isinstance(x, MPoly) else MPoly.const(nv, x)


def _solve_linear(eqs, nv):
    """Row-reduce linear equations; return ({var: value}, inconsistent)."""
    rows = []
    for eq in eqs:
        row = {}
        const = 0
        for e, c in eq.terms.items():
            if not any(e):
                const = c
            else:
                row[e.index(1)] = c
        rows.append((row, const))
    pivots = {}
    for row, const in rows:
        row = dict(row)
        for p, (prow, pconst) in pivots.items():
            if p in row:
                f = row.pop(p)
                for v, c in prow.items():
                    nc = row.get(v, 0) - f * c
                    if nc == 0:
                        row.pop(v, None)
                    else:
                        row[v] = nc
                const = const - f * pconst
        if not row:
            if const != 0:
                return None, True
            continue
        p = min(row)
        inv = 1 / kcoerce(row[p])
        row = {v: c * inv for v, c in row.items()}
        const = const * inv
        del row[p]
        # eliminate p from existing pivots
        for q, (qrow, qconst) in list(pivots.items()):
            if p in qrow:
                f = qrow.pop(p)
                for v, c in row.items():
                    nc = qrow.get(v, 0) - f * c
                    if nc == 0:
                        qrow.pop(v, None)
                    else:
                        qrow[v] = nc
                pivots[q] = (qrow, qconst - f * const)
        pivots[p] = (row, const)
    solved = {p: -const for p, (row, const) in pivots.items() if not row}
    return solved, False


def _rhs_for(params):
    al = tuple(params)
    return lambda x, y, z, w, t: rhs_finite(al, x, y, z, w, t)


def grow_branch(params: Params, branch: BranchData, point, order: int = 8,
                max_window: int = 8, rhs=None):
    """Determine a formal branch from its leading data, order by order.

    Returns four :class:`LaurentSeries` with ``order`` coefficients each,
    starting at the branch's leading exponents.  Raises BranchError when the
    data are inconsistent or do not pin the next coefficient down.
    """
    point = _norm_point(point)
    rhs = rhs or _rhs_for(params)
    loc_lead = [_to_local(l, point) for l in branch.leads]
    known = [dict() for _ in range(4)]
    for (i, n), v in branch.given.items():
        e = _to_local(n, point)
        if e < loc_lead[i]:
            raise BranchError(f"prescribed coefficient t^{n} lies beyond the leading term")
        known[i][e] = kcoerce(v)
    t = local_t(point)
    window = 2
    while True:
        prefix = []
        for i in range(4):
            k = 0
            while loc_lead[i] + k in known[i]:
                k += 1
            prefix.append(k)
        if all(p >= order for p in prefix):
            break
        slots = []
        for i in range(4):
            for e in range(loc_lead[i], loc_lead[i] + prefix[i] + window):
                if e not in known[i]:
                    slots.append((i, e))
        nv = len(slots)
        index = {s: k for k, s in enumerate(slots)}
        comps = []
        for i in range(4):
            hi = loc_lead[i] + prefix[i] + window
            cs = []
            for e in range(loc_lead[i], hi):
                cs.append(known[i][e] if e in known[i] else _unknown_poly(nv, index[(i, e)]))
            comps.append(Series(loc_lead[i], cs, hi))
        eqs = []
        for j, r in enumerate(rhs(*comps, t)):
            res = theta(comps[j], point) - r
            for c in res.c:
                if not _is_zero(c):
                    eqs.append(_as_poly(c, nv))
        solved = {}
        while True:
            lin = [q for q in eqs if q.total_degree() <= 1]
            new, bad = _solve_linear(lin, nv)
            if bad:
                raise BranchError(f"branch inconsistent at order {min(prefix)}", order=min(prefix))
            if not new:
                break
            solved.update(new)
            eqs = [q.subs(new) for q in eqs]
            eqs = [q for q in eqs if not q.is_zero()]
        if solved:
            for k, v in solved.items():
                i, e = slots[k]
                known[i][e] = v
            window = 2
            continue
        window += 1
        if window > max_window:
            k = min(prefix)
            raise BranchError(f"branch not uniquely determined at order {k}", order=k)
    out = []
    for i in range(4):
        cs = tuple(known[i][loc_lead[i] + k] for k in range(order))
        out.append(LaurentSeries(point, branch.leads[i], cs))
    return tuple(out)


# Hamiltonian data

def _local_of(ls: LaurentSeries) -> Series:
    point = ls.point
    lo = _to_local(ls.lead, point)
    return Series(lo, list(ls.coeffs), lo + len(ls.coeffs))


def hamiltonian_constant(params: Params, comps, point):
    """Constant term of H on truncated expansions; raises if not yet exact."""
    point = _norm_point(point)
    ser = [_local_of(c) for c in comps]
    h = hamiltonian(tuple(params), *ser, local_t(point))
    if h.prec is not None and h.prec <= 0:
        raise ValueError("expansions too short to fix the constant term of H")
    return h.coeff(0)


def rational_roots(p: TPoly):
    """Rational roots of p with multiplicities, and the cofactor without them."""
    if p.degree() <= 0:
        return [], p
    qpoly = _rational_part(p)
    roots = []
    rest = p
    cands = _root_candidates(qpoly) if qpoly is not None else []
    for c in cands:
        m = 0
        lin = TPoly((-c, 1))
        while rest.degree() > 0 and rest(c) == 0:
            rest = rest.divmod(lin)[0]
            m += 1
        if m:
            roots.append((c, m))
    return roots, rest


def _rational_part(p: TPoly):
    """A polynomial over Q whose rational roots are those of p (None: unknown)."""
    if all(isinstance(c, Fraction) for c in p.c):
        return p
    dens = [c.den for c in p.c if isinstance(c, ParamRat)]
    lcm = MPoly.const(NSYM, 1)
    for d in dens:
        lcm = _mpoly_lcm(lcm, d)
    by_mono = {}
    for k, c in enumerate(p.c):
        if isinstance(c, ParamRat):
            numer = c.num * exquo(lcm, c.den)
        else:
            numer = lcm.scale(c)
        for e, v in numer.terms.items():
            by_mono.setdefault(e, {})[k] = v
    g = None
    for coeffs in by_mono.values():
        tp = TPoly([coeffs.get(k, 0) for k in range(len(p.c))])
        g = tp if g is None else poly_gcd(g, tp)
    return g


def _mpoly_lcm(a, b):
    g = gcd(a, b)
    return exquo(a * b, g).monic()


def _divisors(n, limit=10 ** 12):
    n = abs(n)
    if n == 0 or n > limit:
        return None
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _root_candidates(q: TPoly):
    if q.degree() <= 0:
        return []
    lcm = 1
    for c in q.c:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in q.c]
    out = []
    m, rest = 0, ints
    while rest and rest[0] == 0:
        rest = rest[1:]
        m += 1
    if m:
        out.append(Fraction(0))
    if len(rest) <= 1:
        return out
    ps, qs = _divisors(rest[0]), _divisors(rest[-1])
    if ps is None or qs is None:
        return out
    seen = set()
    for a in ps:
        for b in qs:
            for sgn in (1, -1):
                c = Fraction(sgn * a, b)
                if c not in seen:
                    seen.add(c)
                    if sum(v * c ** k for k, v in enumerate(rest)) == 0:
                        out.append(c)
    return sorted(out)


def h_series(sol: Solution, params: Params) -> dict:
    """h_inf_0, h_0_0, residues of H at rational nonzero poles, and leftover factors."""
    H = hamiltonian_eval(sol, params)
    h_inf = coefficient(H, INF, 0)
    h_zero = coefficient(H, 0, 0)
    roots, rest = rational_roots(H.den)
    residues = {}
    for c, _ in roots:
        if c == 0:
            continue
        residues[c] = coefficient(H, c, -1)
    return {"h_inf_0": h_inf, "h_0_0": h_zero, "residues": residues,
            "unresolved": [] if rest.degree() <= 0 else [rest]}


def detect_type(sol: Solution, params: Params) -> str:
    """'B' when b_{inf,1} + d_{inf,1} = -1/2, else 'A'.

    Chart values are reported as type B: a finite solution reaches
    y = w = infinity or z = infinity only from x = z = 1/2 or w = 0 with
    a3 != 0, and both force y to grow like -t/2 at infinity.
    """
    if sol.kind != "finite":
        return "B"
    if any(not r.is_zero() for r in residual(sol, params)):
        raise NotASolution("not a solution")
    yw = sol.y + sol.w
    return "B" if coefficient(yw, INF, 1) == Fraction(-1, 2) else "A"


def _in_z(v):
    if isinstance(v, ParamRat):
        return None
    return v.denominator == 1


def integrality_report(sol: Solution, params: Params) -> dict:
    if any(not r.is_zero() for r in residual(sol, params)):
        raise NotASolution("not a solution")
    xi, x0 = coefficient(sol.x, INF, -1), coefficient(sol.x, 0, -1)
    yw = sol.y + sol.w
    yw_inf = coefficient(yw, INF, 0)
    yw_zero = coefficient(yw, 0, 0)
    h = h_series(sol, params)
    d1 = xi - x0
    d2 = yw_inf - yw_zero
    d3 = h["h_inf_0"] - h["h_0_0"]
    in3 = _in_z(d3)
    return {
        "a_inf_-1": xi, "a_0_-1": x0,
        "residue_diff": d1, "residue_diff_integer": _in_z(d1),
        "bd_inf_0": yw_inf, "bd_0_0": yw_zero,
        "bd_diff": d2, "bd_diff_integer": _in_z(d2),
        "h_inf_0": h["h_inf_0"], "h_0_0": h["h_0_0"],
        "h_diff": d3, "h_diff_nonneg_integer": None if in3 is None else (in3 and d3 >= 0),
        "residues": h["residues"],
    }
