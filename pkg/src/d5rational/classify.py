"""Existence conditions for rational solutions and reduction to standard forms.

Conditions are plain data: each one is a list of linear forms in
(a0, ..., a5) that must be integers, plus (for type B) a parity relation
between two forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ParamRat, kstr
from .backlund import BRAID_EDGES, GENERATORS, PI_PERM, param_matrix
from .errors import NormalizationError, ParamsError
from .system import Params

# linear forms as coefficient tuples over (a0, a1, a2, a3, a4, a5)
F = {
    "a0": (1, 0, 0, 0, 0, 0), "a1": (0, 1, 0, 0, 0, 0), "a2": (0, 0, 1, 0, 0, 0),
    "a3": (0, 0, 0, 1, 0, 0), "a4": (0, 0, 0, 0, 1, 0), "a5": (0, 0, 0, 0, 0, 1),
    "a1+a2": (0, 1, 1, 0, 0, 0), "a0+a2": (1, 0, 1, 0, 0, 0),
    "a3+a4": (0, 0, 0, 1, 1, 0), "a3+a5": (0, 0, 0, 1, 0, 1),
    "-a0+a1": (-1, 1, 0, 0, 0, 0), "-a0-a1": (-1, -1, 0, 0, 0, 0),
    "-a4+a5": (0, 0, 0, 0, -1, 1), "-a4-a5": (0, 0, 0, 0, -1, -1),
    "-2a3-a4-a5": (0, 0, 0, -2, -1, -1), "-a0-a1-2a2": (-1, -1, -2, 0, 0, 0),
}

TYPE_A = [
    ("a0", "a2", "a3", "a5"), ("a0", "a1+a2", "a3", "a5"),
    ("a0", "a2", "a3+a4", "a5"), ("a0", "a1+a2", "a3+a4", "a5"),
    ("a1", "a2", "a3", "a5"), ("a1", "a0+a2", "a3", "a5"),
    ("a1", "a2", "a3+a4", "a5"), ("a1", "a0+a2", "a3+a4", "a5"),
    ("a0", "a2", "a3", "a4"), ("a0", "a1+a2", "a3", "a4"),
    ("a0", "a2", "a3+a5", "a4"), ("a0", "a1+a2", "a3+a5", "a4"),
    ("a1", "a2", "a3", "a4"), ("a1", "a0+a2", "a3", "a4"),
    ("a1", "a2", "a3+a5", "a4"), ("a1", "a0+a2", "a3+a5", "a4"),
]


@dataclass(frozen=True)
class BCondition:
    members: tuple        # two forms that must be integers
    parity: tuple         # (form p, form q): p - q is tested mod 2
    congruent: bool       # True: p = q mod 2, False: p != q mod 2
    note: str = ""


TYPE_B = [
    BCondition(("-a0+a1", "-a4+a5"), ("-a0+a1", "-a4+a5"), True),
    BCondition(("-a0+a1", "-a4-a5"), ("-a0+a1", "-a4-a5"), True),
    BCondition(("-a0+a1", "-a0-a1"), ("-a0+a1", "-a0-a1"), False),
    BCondition(("-a0-a1", "-a4+a5"), ("-a0-a1", "-a4+a5"), True),
    BCondition(("-a0-a1", "-a4-a5"), ("-a0-a1", "-a4-a5"), True),
    BCondition(("-a4-a5", "-a4+a5"), ("-a4-a5", "-a4+a5"), False),
    BCondition(("-a0+a1", "-2a3-a4-a5"), ("-a0+a1", "-2a3-a4-a5"), True),
    BCondition(("-a0-a1", "-2a3-a4-a5"), ("-a0+a1", "-2a3-a4-a5"), True,
               note="congruence taken literally: it pairs -a0+a1 with -2a3-a4-a5 "
                    "although the memberships involve -a0-a1"),
    BCondition(("-a0-a1-2a2", "-a4+a5"), ("-a0-a1-2a2", "-a4+a5"), True),
    BCondition(("-a0-a1-2a2", "-a4-a5"), ("-a0-a1-2a2", "-a4-a5"), True),
]

# the form of (8) obtained from (7) through s1
TYPE_B8_SYMMETRIC = BCondition(("-a0-a1", "-2a3-a4-a5"), ("-a0-a1", "-2a3-a4-a5"), True)


def form_value(name, params):
    return sum((c * v for c, v in zip(F[name], params)), Fraction(0))


def _is_int(v):
    return v.denominator == 1


def _require_concrete(params):
    if not params.is_concrete():
        raise ParamsError("classification needs rational parameter values")


def type_a_hits(params: Params):
    _require_concrete(params)
    hits = []
    for k, forms in enumerate(TYPE_A, 1):
        vals = {f: form_value(f, params) for f in forms}
        if all(_is_int(v) for v in vals.values()):
            hits.append({"index": k, "witness": {f: kstr(v) for f, v in vals.items()}})
    return hits


def _b_holds(cond, params):
    vals = {f: form_value(f, params) for f in cond.members}
    if not all(_is_int(v) for v in vals.values()):
        return None
    p, q = (form_value(f, params) for f in cond.parity)
    diff = p - q
    even = _is_int(diff) and diff.numerator % 2 == 0
    if even != cond.congruent:
        return None
    vals.update({f: form_value(f, params) for f in cond.parity})
    return vals


def type_b_hits(params: Params, condition8: str = "printed"):
    _require_concrete(params)
    hits = []
    for k, cond in enumerate(TYPE_B, 1):
        if k == 8 and condition8 == "symmetric":
            cond = TYPE_B8_SYMMETRIC
        vals = _b_holds(cond, params)
        if vals is None:
            continue
        hit = {"index": k, "witness": {f: kstr(v) for f, v in vals.items()}}
        if cond.note:
            hit["footnote"] = cond.note
        hits.append(hit)
    return hits


# reduction to standard forms

TAGS = ("A_std", "A_point", "B_I", "B_II")
A_POINT = (0, 0, 0, 0, 1, 0)


def _ints(*vals):
    return all(_is_int(v) for v in vals)


# goals on integer vectors scaled by a common denominator L

def _goal_a(p, L):
    return p[1] % L == 0 and p[2] % L == 0 and p[3] % L == 0 and p[5] % L == 0


def _goal_b1(p, L):
    return (p[1] - p[0]) % (2 * L) == 0 and (p[5] - p[4]) % (2 * L) == 0


def _goal_b2(p, L):
    return (p[1] - p[0]) % (2 * L) == 0 and (p[5] - p[4]) % (2 * L) == L


GOALS = {"A": _goal_a, "B_I": _goal_b1, "B_II": _goal_b2}


def _fast_action(g, a):
    if g[0] == "s":
        i = int(g[1])
        out = list(a)
        ai = a[i]
        out[i] = -ai
        for j in _NEIGHBOURS[i]:
            out[j] = a[j] + ai
        return tuple(out)
    perm = PI_PERM[g]
    return tuple(a[perm[i]] for i in range(6))


_NEIGHBOURS = {i: [j for e in BRAID_EDGES if i in e for j in e if j != i] for i in range(6)}


def search_words(params: Params, goals, budget: int = 8) -> dict:
    """Breadth-first search over generator words, shortest and lexicographically first.

    Returns {goal name: word or None}; states already visited are skipped.
    """
    L = 1
    for v in params:
        L = L * v.denominator // math.gcd(L, v.denominator)
    start = tuple(int(v * L) for v in params)
    found = {g: None for g in goals}
    pending = set(goals)

    def check(state, word):
        for g in list(pending):
            if GOALS[g](state, L):
                found[g] = word
                pending.discard(g)

    check(start, [])
    seen = {start}
    frontier = [(start, [])]
    depth = 0
    while pending and frontier and depth < budget:
        nxt = []
        for state, word in frontier:
            for g in GENERATORS:
                q = _fast_action(g, state)
                if q in seen:
                    continue
                seen.add(q)
                w = word + [g]
                check(q, w)
                nxt.append((q, w))
            if not pending:
                break
        frontier = nxt
        depth += 1
    return found


def search_word(params: Params, goal, budget: int = 8):
    """Shortest word reaching a named goal ("A", "B_I", "B_II"), or None."""
    return search_words(params, [goal], budget)[goal]


def _power(i, n):
    if n == 0:
        return []
    return [f"T{i}" if n > 0 else f"T{i}'"] * abs(n)


def translation_tokens(delta):
    """Tokens in T1, T2, T3, T4, T6 whose combined shift is ``delta``, or None."""
    d = [Fraction(v) for v in delta]
    if not all(_is_int(v) for v in d):
        return None
    if (d[0] + d[1]).numerator % 2:
        return None
    if d[0] + d[1] + 2 * d[2] + 2 * d[3] + d[4] + d[5] != 0:
        return None
    n4 = int((d[0] + d[1]) / 2)
    n2 = int((d[1] - d[0]) / 2)
    n6 = int(d[2]) + n4
    n3 = int(d[3]) + n6
    n1 = int(d[4]) + n3
    if -n1 - n3 != d[5]:
        return None
    return _power(2, n2) + _power(4, n4) + _power(6, n6) + _power(3, n3) + _power(1, n1)


@dataclass
class Normalization:
    word: list
    target: Params
    tag: str

    def word_text(self):
        return " ".join(self.word)


def _translate_a(p):
    a0, a1, a2, a3, a4, a5 = p
    if _ints(a0, a4):
        delta = [A_POINT[i] - p[i] for i in range(6)]
        toks = translation_tokens(delta)
        if toks is not None:
            return toks, "A_point"
    delta = [a1, -a1, -a2, -a3, None, -a5]
    delta[4] = -(delta[0] + delta[1] + 2 * delta[2] + 2 * delta[3] + delta[5])
    return translation_tokens(delta), "A_std"


def _translate_b(p, tag):
    d1 = p[1] - p[0]
    d2 = p[5] - p[4]
    goal2 = 0 if tag == "B_I" else 1
    # T2 moves -a0+a1 by +2, T1 moves -a4+a5 by -2
    n2 = -int(d1) // 2
    n1 = int(d2 - goal2) // 2
    return _power(2, n2) + _power(1, n1)


def normalize_to_standard(params: Params, budget: int = 8, family: str = None) -> Normalization:
    """Word carrying ``params`` to a standard form; verified through the affine maps.

    ``family`` restricts the search to "A" or "B"; by default type A is tried
    first, then form I and form II of type B.
    """
    _require_concrete(params)
    order = {"A": ["A"], "B": ["B_I", "B_II"], None: ["A", "B_I", "B_II"]}[family]
    heads = search_words(params, order, budget)
    for goal in order:
        head = heads[goal]
        if head is None:
            continue
        mid = param_matrix(head).apply(params)
        if goal == "A":
            tail, tag = _translate_a(tuple(mid))
        else:
            tail, tag = _translate_b(tuple(mid), goal), goal
        word = head + tail
        target = param_matrix(word).apply(params)
        if not _standard_ok(target, tag):
            raise NormalizationError(f"internal error: word does not reach {tag}")
        return Normalization(word, target, tag)
    raise NormalizationError(f"no standard form within budget {budget}")


def _standard_ok(p, tag):
    a0, a1, a2, a3, a4, a5 = p
    if tag == "A_point":
        return tuple(p) == A_POINT
    if tag == "A_std":
        return a1 == a2 == a3 == a5 == 0
    if tag == "B_I":
        return a1 - a0 == 0 and a5 - a4 == 0
    return a1 - a0 == 0 and a5 - a4 == 1


@dataclass
class ClassReport:
    type_a: list
    type_b: list
    exists: bool
    standard_form: str = None
    word: str = None
    footnotes: list = field(default_factory=list)

    def to_json(self):
        out = {"type_a": [h["index"] for h in self.type_a],
               "type_b": [h["index"] for h in self.type_b],
               "exists": self.exists, "standard_form": self.standard_form, "word": self.word,
               "witnesses": {"A": {h["index"]: h["witness"] for h in self.type_a},
                             "B": {h["index"]: h["witness"] for h in self.type_b}}}
        if self.footnotes:
            out["footnotes"] = self.footnotes
        return out


def classify(params: Params, budget: int = 8, condition8: str = "printed") -> ClassReport:
    a = type_a_hits(params)
    b = type_b_hits(params, condition8)
    rep = ClassReport(a, b, bool(a or b))
    rep.footnotes = [f"type B ({h['index']}): {h['footnote']}" for h in b if "footnote" in h]
    if rep.exists:
        try:
            norm = normalize_to_standard(params, budget, "A" if a else "B")
            rep.standard_form, rep.word = norm.tag, norm.word_text()
        except NormalizationError:
            rep.standard_form = None
    return rep


def family_flags(params: Params, condition8: str = "printed"):
    return bool(type_a_hits(params)), bool(type_b_hits(params, condition8))


def random_params(rng, max_den: int = 12, span: int = 2) -> Params:
    """Rational parameters on the hyperplane with denominators at most ``max_den``."""
    free = [Fraction(rng.randint(-span * max_den, span * max_den), rng.randint(1, max_den))
            for _ in range(5)]
    return Params.from_free(*free)


def weyl_invariance_check(samples: int = 1000, seed: int = 0, max_word: int = 6,
                          condition8: str = "printed") -> dict:
    """Compare existence and family flags before and after random generator words."""
    import random

    rng = random.Random(seed)
    violations = []
    hits = 0
    for _ in range(samples):
        p = random_params(rng)
        word = [rng.choice(GENERATORS) for _ in range(rng.randint(1, max_word))]
        q = param_matrix(word).apply(p)
        before, after = family_flags(p, condition8), family_flags(q, condition8)
        hits += any(before)
        if before != after:
            violations.append({"params": p.to_json(), "word": " ".join(word),
                               "image": q.to_json(), "before": before, "after": after})
    return {"samples": samples, "with_solutions": hits, "violations": violations,
            "ok": not violations}
