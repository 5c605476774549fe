"""The polynomial Hamiltonian system, its chart forms, residuals and I/O.

Right-hand sides are written once as plain arithmetic, so they evaluate on
any ring that supports ``+ - *`` with field scalars: rational functions of t,
truncated series, or polynomials in the dependent variables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import MPoly, ParamRat, RatFun, kcoerce, kstr, parse_expr, parse_scalar
from .algebra.parse import alpha0
from .errors import ChartError, NotASolution, ParamsError, ParseError

KINDS = ("finite", "inf_yw", "inf_z")


@dataclass(frozen=True)
class Params:
    """(a0, ..., a5) on the hyperplane a0 + a1 + 2a2 + 2a3 + a4 + a5 = 1."""

    values: tuple

    def __post_init__(self):
        vals = tuple(kcoerce(v) for v in self.values)
        if len(vals) != 6:
            raise ParamsError(f"expected 6 parameters, got {len(vals)}")
        a0, a1, a2, a3, a4, a5 = vals
        if a0 + a1 + 2 * a2 + 2 * a3 + a4 + a5 != 1:
            raise ParamsError("parameters violate a0+a1+2a2+2a3+a4+a5 = 1")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_free(cls, a1, a2, a3, a4, a5):
        a0 = 1 - a1 - 2 * a2 - 2 * a3 - a4 - a5
        return cls((a0, a1, a2, a3, a4, a5))

    @classmethod
    def symbolic(cls):
        s = [ParamRat.symbol(f"a{i}") for i in range(1, 6)]
        return cls((alpha0(), *s))

    @classmethod
    def parse(cls, source):
        if isinstance(source, str):
            text = source.strip()
            if text.startswith("["):
                source = json.loads(text)
            else:
                source = text.split(",")
        items = []
        for p in source:
            if isinstance(p, (int, Fraction)):
                items.append(Fraction(p))
            elif isinstance(p, str):
                items.append(parse_scalar(p))
            else:
                raise ParseError(f"bad parameter entry {p!r}", token=str(p))
        return cls(tuple(items))

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return 6

    def is_concrete(self):
        return all(isinstance(v, Fraction) for v in self.values)

    def to_json(self):
        return [kstr(v) for v in self.values]

    def __str__(self):
        return "(" + ", ".join(kstr(v) for v in self.values) + ")"

    def map(self, fn):
        return Params(tuple(fn(v) for v in self.values))


@dataclass(frozen=True)
class Solution:
    """A point of the phase space over C(t).

    For ``finite`` the components are (x, y, z, w).  For ``inf_yw`` they are
    the coordinates (x2, y2, z2, w2) of the chart around y = w = infinity and
    for ``inf_z`` the coordinates (x3, y3, z3, w3) around z = infinity.
    """

    kind: str
    x: RatFun
    y: RatFun
    z: RatFun
    w: RatFun

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown solution kind {self.kind!r}")
        for name in "xyzw":
            v = getattr(self, name)
            if not isinstance(v, RatFun):
                object.__setattr__(self, name, RatFun(v) if not isinstance(v, str) else parse_expr(v))

    @classmethod
    def finite(cls, x, y, z, w):
        return cls("finite", *(_as_ratfun(v) for v in (x, y, z, w)))

    @property
    def comps(self):
        return (self.x, self.y, self.z, self.w)

    def is_infinite(self):
        """True when a chart value really sits on the divisor at infinity."""
        if self.kind == "inf_yw":
            return self.y.is_zero()
        if self.kind == "inf_z":
            return self.z.is_zero()
        return False

    def require_infinite(self):
        if self.kind != "finite" and not self.is_infinite():
            raise ChartError("chart violation: chart coordinate is not identically zero")
        return self

    def map(self, fn):
        return Solution(self.kind, *(fn(c) for c in self.comps))

    def to_json(self):
        return {"kind": self.kind, "x": str(self.x), "y": str(self.y), "z": str(self.z), "w": str(self.w)}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        kind = data.get("kind", "finite")
        return cls(kind, *(parse_expr(str(data[k])) for k in "xyzw"))

    def __str__(self):
        return f"{self.kind}({self.x}, {self.y}, {self.z}, {self.w})"


def _as_ratfun(v):
    if isinstance(v, RatFun):
        return v
    if isinstance(v, str):
        return parse_expr(v)
    return RatFun.const(v)


# right-hand sides: t * d/dt (component) = rhs

def rhs_finite(al, x, y, z, w, t):
    a0, a1, a2, a3, a4, a5 = al
    k = 2 * a2 + 2 * a3 + a4 + a5
    k45 = a4 + a5
    fx = 2 * x * x * y + t * x * x - 2 * x * y - (t + k) * x + (a2 + a5) + 2 * z * ((z - 1) * w + a3)
    fy = -2 * x * y * y + y * y - 2 * t * x * y + (t + k) * y - a1 * t
    fz = 2 * z * z * w + t * z * z - 2 * z * w - (t + k45) * z + a5 + 2 * y * z * (z - 1)
    fw = -2 * z * w * w + w * w - 2 * t * z * w + (t + k45) * w - a3 * t - 2 * y * (-w + 2 * z * w + a3)
    return fx, fy, fz, fw


def rhs_m2(al, x2, y2, z2, w2, t):
    """Chart x2 = -((x-z)y - a2)y, y2 = 1/y, z2 = z, w2 = w + y."""
    a0, a1, a2, a3, a4, a5 = al
    k = 2 * a3 + a4 + a5
    k45 = a4 + a5
    c12 = a1 + 2 * a2
    fx = (2 * x2 * x2 * y2 + 3 * t * x2 * x2 * y2 * y2 - 2 * t * x2 * z2 + (t + k) * x2
          - 2 * c12 * t * x2 * y2 + a2 * (a1 + a2) * t)
    fy = (-2 * x2 * y2 * y2 + 2 * z2 - 1 - 2 * t * x2 * y2 * y2 * y2 + 2 * t * y2 * z2
          - (t + k) * y2 + t * c12 * y2 * y2)
    fz = 2 * z2 * z2 * w2 + t * z2 * z2 - 2 * z2 * w2 - (t + k45) * z2 + a5
    fw = (-2 * z2 * w2 * w2 + w2 * w2 - 2 * t * z2 * w2 + (t + k45) * w2 + 2 * x2
          + 2 * t * x2 * y2 - (c12 + a3) * t)
    return fx, fy, fz, fw


def rhs_m3(al, x3, y3, z3, w3, t):
    """Chart x3 = x, y3 = y, z3 = 1/z, w3 = -z(wz + a3)."""
    a0, a1, a2, a3, a4, a5 = al
    k = 2 * a2 + 2 * a3 + a4 + a5
    k3 = 2 * a3 + a4 + a5
    fx = (2 * x3 * x3 * y3 + t * x3 * x3 - 2 * x3 * y3 - (t + k) * x3 + a2 + a5
          - 2 * w3 + 2 * z3 * w3 + 2 * a3)
    fy = -2 * x3 * y3 * y3 + y3 * y3 - 2 * t * x3 * y3 + (t + k) * y3 - a1 * t
    fz = (2 * w3 * z3 * z3 - 2 * w3 * z3 * z3 * z3 + (t + k3) * z3 - t
          - (2 * a3 + a5) * z3 * z3 - 2 * y3 + 2 * y3 * z3)
    fw = (-2 * z3 * w3 * w3 - (t + k3) * w3 + 3 * z3 * z3 * w3 * w3
          + 2 * (2 * a3 + a5) * z3 * w3 - 2 * y3 * w3 + a3 * (a3 + a5))
    return fx, fy, fz, fw


RHS = {"finite": rhs_finite, "inf_yw": rhs_m2, "inf_z": rhs_m3}


def hamiltonian(al, x, y, z, w, t):
    a0, a1, a2, a3, a4, a5 = al
    k = 2 * a2 + 2 * a3 + a4 + a5
    return (x * (x - 1) * y * (y + t) - k * x * y + (a2 + a5) * y + a1 * t * x
            + z * (z - 1) * w * (w + t) - (a4 + a5) * z * w + a5 * w + a3 * t * z
            + 2 * y * z * ((z - 1) * w + a3))


def residual(sol: Solution, params: Params):
    """t * d/dt of each component minus the right-hand side (4 rational functions)."""
    t = RatFun.t()
    rhs = RHS[sol.kind](tuple(params), *sol.comps, t)
    return tuple(t * c.derivative() - r for c, r in zip(sol.comps, rhs))


def is_rational_solution(sol: Solution, params: Params) -> bool:
    return all(r.is_zero() for r in residual(sol, params))


def require_solution(sol: Solution, params: Params):
    res = residual(sol, params)
    bad = [n for n, r in zip("xyzw", res) if not r.is_zero()]
    if bad:
        raise NotASolution(f"not a solution: nonzero residual in {', '.join(bad)}")
    return sol


def hamiltonian_eval(sol: Solution, params: Params) -> RatFun:
    if sol.kind != "finite":
        raise ChartError("the Hamiltonian is evaluated on finite solutions only")
    return hamiltonian(tuple(params), *sol.comps, RatFun.t())


def hamilton_identity_check():
    """Check symbolically that the system is Hamiltonian.

    Returns a dict mapping each equation to whether
    dx/dt = dH/dy, dy/dt = -dH/dx, dz/dt = dH/dw, dw/dt = -dH/dz
    holds identically in (x, y, z, w, t, a1..a5).
    """
    n = 10
    g = [MPoly.gen(n, i) for i in range(n)]
    x, y, z, w, t = g[:5]
    a1, a2, a3, a4, a5 = g[5:]
    a0 = 1 - a1 - 2 * a2 - 2 * a3 - a4 - a5
    al = (a0, a1, a2, a3, a4, a5)
    h = hamiltonian(al, x, y, z, w, t)
    fx, fy, fz, fw = rhs_finite(al, x, y, z, w, t)
    return {
        "x": fx == h.diff(1),
        "y": fy == -h.diff(0),
        "z": fz == h.diff(3),
        "w": fw == -h.diff(2),
    }


def load_json(path_or_text):
    if isinstance(path_or_text, str) and path_or_text.lstrip().startswith(("{", "[")):
        return json.loads(path_or_text)
    with open(path_or_text) as fh:
        return json.load(fh)


def solutions_from_json(data) -> list:
    if isinstance(data, dict) and "solutions" in data:
        data = data["solutions"]
    if isinstance(data, dict):
        data = [data]
    return [Solution.from_json(d) for d in data]


def solutions_to_json(sols: Iterable[Solution]):
    return [s.to_json() for s in sols]
