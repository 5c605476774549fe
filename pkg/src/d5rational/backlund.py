"""Bäcklund transformations of the D5 system.

Generators are ``s0``..``s5`` and ``p1``..``p4`` (the diagram automorphisms).
A word is a sequence of generators applied left to right: in ``s1 s2`` the
transformation ``s1`` acts first.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import RatFun, kcoerce
from .errors import ChartError, NotASolution, WordError
from .system import Params, Solution, is_rational_solution, residual

S_GENS = ("s0", "s1", "s2", "s3", "s4", "s5")
PI_GENS = ("p1", "p2", "p3", "p4")
GENERATORS = S_GENS + PI_GENS

# the Dynkin diagram: braid relations (s_i s_j)^3 = 1 on these edges
BRAID_EDGES = ((0, 2), (1, 2), (2, 3), (3, 4), (3, 5))

# index permutation induced on the simple roots by each diagram automorphism
PI_PERM = {
    "p1": (1, 0, 2, 3, 5, 4),
    "p2": (5, 4, 3, 2, 1, 0),
    "p3": (0, 1, 2, 3, 5, 4),
    "p4": (1, 0, 2, 3, 4, 5),
}


# parameter actions

def _s_action(i, a):
    a = list(a)
    ai = a[i]
    out = list(a)
    out[i] = -ai
    for j in _neighbours(i):
        out[j] = a[j] + ai
    return tuple(out)


def _neighbours(i):
    for e in BRAID_EDGES:
        if i in e:
            yield e[1] if e[0] == i else e[0]


def param_action(g: str, params: Params) -> Params:
    a = tuple(params)
    if g in S_GENS:
        return Params(_s_action(int(g[1]), a))
    if g in PI_PERM:
        perm = PI_PERM[g]
        return Params(tuple(a[perm[i]] for i in range(6)))
    raise WordError(f"unknown generator {g!r}")


@dataclass(frozen=True)
class AffineMap:
    """a' = A a + c on the free coordinates (a1, ..., a5); a0 follows from the constraint."""

    A: tuple
    c: tuple

    def apply(self, params: Params) -> Params:
        free = tuple(params)[1:]
        new = [sum((self.A[i][j] * free[j] for j in range(5)), self.c[i]) for i in range(5)]
        return Params.from_free(*new)

    def is_translation(self):
        return all(self.A[i][j] == (1 if i == j else 0) for i in range(5) for j in range(5))

    def offset(self):
        """Translation vector on all six parameters; only for translations."""
        if not self.is_translation():
            raise ValueError("not a translation")
        c = self.c
        return (-(c[0] + 2 * c[1] + 2 * c[2] + c[3] + c[4]),) + tuple(c)

    def then(self, other: "AffineMap") -> "AffineMap":
        """Apply self first, then other."""
        A = tuple(tuple(sum(other.A[i][k] * self.A[k][j] for k in range(5)) for j in range(5))
                  for i in range(5))
        c = tuple(sum((other.A[i][k] * self.c[k] for k in range(5)), other.c[i]) for i in range(5))
        return AffineMap(A, c)


def _generator_map(g):
    base = Params.from_free(0, 0, 0, 0, 0)
    c = tuple(param_action(g, base))[1:]
    cols = []
    for j in range(5):
        e = [0] * 5
        e[j] = 1
        img = tuple(param_action(g, Params.from_free(*e)))[1:]
        cols.append([img[i] - c[i] for i in range(5)])
    A = tuple(tuple(Fraction(cols[j][i]) for j in range(5)) for i in range(5))
    return AffineMap(A, tuple(Fraction(x) for x in c))


_GEN_MAPS = {g: _generator_map(g) for g in GENERATORS}
IDENTITY = AffineMap(tuple(tuple(Fraction(int(i == j)) for j in range(5)) for i in range(5)),
                     (Fraction(0),) * 5)


def param_matrix(word) -> AffineMap:
    out = IDENTITY
    for g in expand_word(word):
        out = out.then(_GEN_MAPS[g])
    return out


# words

_T_DEFS = {
    "T1": "p1 s5 s3 s2 s1 s0 s2 s3 s5",
    "T2": "p2 T1 p2",
    "T3": "s1 s4 T1 s4 s1",
    "T4": "s2 s3 T3 s3 s2",
    "T5": "s1 T4 s1",
    "T6": "s3 T3 s3",
}
_TOKEN = re.compile(r"(s[0-5]|p[1-4]|π[1-4]|T[1-6])(['′]|\^-1)?")


def shift_word(i: int, inverse: bool = False) -> list:
    name = f"T{i}"
    if name not in _T_DEFS:
        raise WordError(f"unknown translation {name!r}")
    word = expand_word(_T_DEFS[name])
    # every generator is an involution, so the inverse is the reversed word
    return word[::-1] if inverse else word


def expand_word(word) -> list:
    """Flatten a word (string or token list) into generator names."""
    if isinstance(word, str):
        text = word.replace(",", " ").strip()
        tokens = text.split() if text else []
    else:
        tokens = list(word)
    out = []
    for tok in tokens:
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise WordError(f"bad word token {tok!r}")
        base, inv = m.group(1).replace("π", "p"), bool(m.group(2))
        if base.startswith("T"):
            out.extend(shift_word(int(base[1]), inverse=inv))
        else:
            out.append(base)
    return out


def word_text(tokens) -> str:
    return " ".join(tokens)


# rational actions

def _raw_action(g, al, x, y, z, w, t):
    """Image of a generic point; returns (X, Y, Z, W, flip) with flip meaning t -> -t.

    The images are written in the old t; the caller substitutes t -> -t when
    flip is set.
    """
    a0, a1, a2, a3, a4, a5 = al
    if g == "s0":
        return x + a0 / (y + t), y, z, w, False
    if g == "s1":
        return x + a1 / y, y, z, w, False
    if g == "s2":
        d = x - z
        return x, y - a2 / d, z, w + a2 / d, False
    if g == "s3":
        return x, y, z + a3 / w, w, False
    if g == "s4":
        return x, y, z, w - a4 / (z - 1), False
    if g == "s5":
        return x, y, z, w - a5 / z, False
    if g == "p1":
        return 1 - x, -y - t, 1 - z, -w, False
    if g == "p2":
        return (y + w + t) / t, -t * (z - 1), (y + t) / t, -t * (x - z), True
    if g == "p3":
        return 1 - x, -y, 1 - z, -w, True
    if g == "p4":
        return x, y + t, z, w, True
    raise WordError(f"unknown generator {g!r}")


_DENOMINATOR = {"s0": lambda s: s.y + RatFun.t(), "s1": lambda s: s.y,
                "s2": lambda s: s.x - s.z, "s3": lambda s: s.w,
                "s4": lambda s: s.z - 1, "s5": lambda s: s.z}


def _finite_action(g, sol: Solution, params: Params) -> Solution:
    al = tuple(params)
    if g in _DENOMINATOR and _DENOMINATOR[g](sol).is_zero():
        i = int(g[1])
        if al[i] == 0:
            return sol
        half = RatFun.const(Fraction(1, 2))
        if g == "s2" and sol.x == half:
            # x = z = 1/2: y and w are pushed to infinity
            return Solution("inf_yw", al[2] * sol.y, RatFun.const(0), sol.z, sol.w + sol.y)
        if g == "s3":
            # w = 0: z is pushed to infinity
            return Solution("inf_z", sol.x, sol.y, RatFun.const(0), -al[3] * sol.z)
        raise NotASolution(f"{g} is undefined: its denominator vanishes while a{i} != 0")
    X, Y, Z, W, flip = _raw_action(g, al, *sol.comps, RatFun.t())
    out = Solution("finite", X, Y, Z, W)
    return out.map(RatFun.neg_t) if flip else out


def inf_yw_value(params: Params) -> Solution:
    """The only candidate with y = w = infinity, written in the chart (x2, y2, z2, w2)."""
    a0, a1, a2, a3, a4, a5 = params
    t = RatFun.t()
    x2 = Fraction(-1, 4) * (a0 - a1 - 2 * a2) * t - Fraction(1, 2) * (a5 - a4) * (a4 + a5)
    w2 = Fraction(-1, 2) * t + (a5 - a4)
    return Solution("inf_yw", x2, RatFun.const(0), RatFun.const(Fraction(1, 2)), w2)


def inf_z_value(params: Params) -> Solution:
    """The only candidate with z = infinity, written in the chart (x3, y3, z3, w3)."""
    a0, a1, a2, a3, a4, a5 = params
    t = RatFun.t()
    x3 = Fraction(1, 2) + (a1 - a0) / t
    w3 = Fraction(1, 4) * (2 * a3 - a4 + a5) + Fraction(1, 2) * (a1 - a0) * (a0 + a1) / t
    return Solution("inf_z", x3, Fraction(-1, 2) * t, RatFun.const(0), w3)


def _chart_action(g, sol: Solution, params: Params) -> Solution:
    al = tuple(params)
    new = param_action(g, params)
    if sol.kind == "inf_yw":
        if g == "s2":
            if al[2] == 0:
                return sol
            x2, _, z2, w2 = sol.comps
            return Solution("finite", z2, -x2 / al[2], z2, w2 + x2 / al[2])
        out = inf_z_value(new) if g == "p2" else inf_yw_value(new)
    else:
        if g == "s3":
            if al[3] == 0:
                return sol
            x3, y3, _, w3 = sol.comps
            return Solution("finite", x3, y3, w3 / al[3], RatFun.const(0))
        out = inf_yw_value(new) if g == "p2" else inf_z_value(new)
    if not is_rational_solution(out, new):
        raise ChartError(f"chart singular: {g} has no image of this infinite solution")
    return out


def apply_transform(g: str, sol: Solution, params: Params):
    """Apply one generator; returns (new solution, new parameters)."""
    if g not in GENERATORS:
        raise WordError(f"unknown generator {g!r}")
    new_params = param_action(g, params)
    if sol.kind == "finite":
        return _finite_action(g, sol, params), new_params
    if sol.is_infinite():
        return _chart_action(g, sol, params), new_params
    finite = chart_convert(sol, "finite", params)
    return _finite_action(g, finite, params), new_params


def apply_word(word, sol: Solution, params: Params):
    for g in expand_word(word):
        sol, params = apply_transform(g, sol, params)
    return sol, params


# charts

def chart_convert(sol: Solution, target: str, params: Params) -> Solution:
    """Move a solution between the finite coordinates and the charts m2 / m3."""
    names = {"finite": "finite", "m2": "inf_yw", "inf_yw": "inf_yw", "m3": "inf_z", "inf_z": "inf_z"}
    if target not in names:
        raise ValueError(f"unknown chart {target!r}")
    target = names[target]
    if sol.kind == target:
        return sol
    a2, a3 = params[2], params[3]
    if sol.kind != "finite":
        sol = _to_finite(sol, a2, a3)
        if target == "finite":
            return sol
    x, y, z, w = sol.comps
    if target == "inf_yw":
        if y.is_zero():
            raise ChartError("chart singular: y vanishes identically")
        return Solution("inf_yw", -((x - z) * y - a2) * y, 1 / y, z, w + y)
    if z.is_zero():
        raise ChartError("chart singular: z vanishes identically")
    return Solution("inf_z", x, y, 1 / z, -z * (w * z + a3))


def _to_finite(sol, a2, a3):
    if sol.is_infinite():
        raise ChartError("chart singular: the value lies at infinity")
    if sol.kind == "inf_yw":
        x2, y2, z2, w2 = sol.comps
        y = 1 / y2
        return Solution("finite", z2 + (a2 - x2 * y2) * y2, y, z2, w2 - y)
    x3, y3, z3, w3 = sol.comps
    return Solution("finite", x3, y3, 1 / z3, (-w3 * z3 - a3) * z3)


def inf_yw_condition(params: Params) -> bool:
    a0, a1, a2, a3, a4, a5 = params
    first = (a0 + a1) * (a1 - a0) == 0
    return first and (a0 + a1 + 2 * a2 == 1 or (a4 + a5) * (a5 - a4) == 0)


def inf_z_condition(params: Params) -> bool:
    a0, a1, a2, a3, a4, a5 = params
    last = (a4 + a5) * (a5 - a4) == 0
    return last and ((a0 + a1) * (a1 - a0) == 0 or 2 * a3 + a4 + a5 == 1)


def infinite_solution(params: Params) -> list:
    """Chart values of every solution with y = w = infinity or z = infinity."""
    out = []
    for cand in (inf_yw_value(params), inf_z_value(params)):
        if is_rational_solution(cand, params):
            out.append(cand)
    return out


# relations

def _conjugate(g, h):
    """The generator equal to g h g, when it exists."""
    if g in PI_PERM and h in S_GENS:
        return f"s{PI_PERM[g][int(h[1])]}"
    if g in S_GENS and h in S_GENS:
        i, j = int(g[1]), int(h[1])
        if (min(i, j), max(i, j)) in BRAID_EDGES:
            return None
        return h
    if g in PI_PERM and h in PI_PERM:
        perm_g, perm_h = PI_PERM[g], PI_PERM[h]
        conj = tuple(perm_g[perm_h[perm_g[i]]] for i in range(6))
        for k, p in PI_PERM.items():
            if p == conj:
                return k
        return None
    if g in S_GENS and h in PI_PERM:
        # s h s = h' with h' a generator means h s h = s', handled by the pair (h, g)
        return None
    return None


def _random_point(rng):
    def r():
        return Fraction(rng.randint(-97, 97), rng.randint(1, 23)) + Fraction(1, 1009)
    free = [r() for _ in range(5)]
    return Params.from_free(*free), (r(), r(), r(), r(), r())


def _act_numeric(word, params, point):
    x, y, z, w, t = point
    for g in word:
        X, Y, Z, W, flip = _raw_action(g, tuple(params), x, y, z, w, t)
        x, y, z, w = X, Y, Z, W
        if flip:
            t = -t
        params = param_action(g, params)
    return params, (x, y, z, w, t)


def _holds(word, samples, expected=None):
    """Check that a word equals the identity (or the word ``expected``)."""
    m = param_matrix(word)
    target = param_matrix(expected) if expected else IDENTITY
    if m != target:
        return False
    for params, point in samples:
        lhs = _act_numeric(word, params, point)
        rhs = _act_numeric(expected or [], params, point)
        if lhs != rhs:
            return False
    return True


def verify_relations(seed: int = 0, samples: int = 3) -> dict:
    """Check the defining relations on the affine maps and on the rational maps.

    Rational maps are compared exactly at random rational points; the
    parameter maps are compared as exact affine maps.
    """
    rng = random.Random(seed)
    pts = [_random_point(rng) for _ in range(samples)]
    failures = []
    counts = {"involutions": 0, "braid": 0, "commuting": 0, "pi_conjugations": 0}
    for g in GENERATORS:
        if _holds([g, g], pts):
            counts["involutions"] += 1
        else:
            failures.append(f"{g}^2")
    for i, j in BRAID_EDGES:
        word = [f"s{i}", f"s{j}"] * 3
        if _holds(word, pts):
            counts["braid"] += 1
        else:
            failures.append(f"(s{i} s{j})^3")
    # every pair not joined by a braid edge: g h g is again a generator
    for a in range(len(GENERATORS)):
        for b in range(a + 1, len(GENERATORS)):
            g, h = GENERATORS[a], GENERATORS[b]
            if g in S_GENS and h in S_GENS and (int(g[1]), int(h[1])) in BRAID_EDGES:
                continue
            if g in S_GENS and h in PI_PERM:
                g, h = h, g
            conj = _conjugate(g, h)
            if conj is not None and _holds([g, h, g], pts, [conj]):
                counts["commuting"] += 1
            else:
                failures.append(f"{g} {h} {g}")
    for p in PI_GENS:
        for s in S_GENS:
            if _holds([p, s, p], pts, [_conjugate(p, s)]):
                counts["pi_conjugations"] += 1
            else:
                failures.append(f"{p} {s} {p}")
    counts["failures"] = failures
    counts["ok"] = not failures
    return counts


def relations_summary(report: dict) -> str:
    pi = "π-conjugations OK" if report["pi_conjugations"] == 24 and report["ok"] else "π-conjugations FAILED"
    return (f"relations verified: {report['involutions']} involutions, {report['braid']} braid, "
            f"{report['commuting']} commuting, {pi}")
