"""Regenerate src/d5rational/data/grid.json.

Annotations come from a direct reading of the existence conditions written
here independently of the package, so the grid can be used to test it.
"""

import json
from fractions import Fraction as Q
from pathlib import Path

A_CONDS = [
    ("a0", "a2", "a3", "a5"), ("a0", "a1+a2", "a3", "a5"), ("a0", "a2", "a3+a4", "a5"),
    ("a0", "a1+a2", "a3+a4", "a5"), ("a1", "a2", "a3", "a5"), ("a1", "a0+a2", "a3", "a5"),
    ("a1", "a2", "a3+a4", "a5"), ("a1", "a0+a2", "a3+a4", "a5"), ("a0", "a2", "a3", "a4"),
    ("a0", "a1+a2", "a3", "a4"), ("a0", "a2", "a3+a5", "a4"), ("a0", "a1+a2", "a3+a5", "a4"),
    ("a1", "a2", "a3", "a4"), ("a1", "a0+a2", "a3", "a4"), ("a1", "a2", "a3+a5", "a4"),
    ("a1", "a0+a2", "a3+a5", "a4"),
]


def forms(a):
    a0, a1, a2, a3, a4, a5 = a
    return {
        "a0": a0, "a1": a1, "a2": a2, "a3": a3, "a4": a4, "a5": a5,
        "a1+a2": a1 + a2, "a0+a2": a0 + a2, "a3+a4": a3 + a4, "a3+a5": a3 + a5,
        "u": -a0 + a1, "v": -a0 - a1, "p": -a4 + a5, "q": -a4 - a5,
        "r": -2 * a3 - a4 - a5, "s": -a0 - a1 - 2 * a2,
    }


# (member, member, congruence lhs, congruence rhs, congruent?)
B_CONDS = [
    ("u", "p", "u", "p", True), ("u", "q", "u", "q", True), ("u", "v", "u", "v", False),
    ("v", "p", "v", "p", True), ("v", "q", "v", "q", True), ("q", "p", "q", "p", False),
    ("u", "r", "u", "r", True), ("v", "r", "u", "r", True), ("s", "p", "s", "p", True),
    ("s", "q", "s", "q", True),
]
B8_SYMMETRIC = ("v", "r", "v", "r", True)


def isint(x):
    return x.denominator == 1


def b_ok(f, cond):
    m1, m2, l, r, cong = cond
    if not (isint(f[m1]) and isint(f[m2])):
        return False
    d = f[l] - f[r]
    return (isint(d) and d.numerator % 2 == 0) == cong


def annotate(a):
    f = forms(a)
    a_hits = [k for k, c in enumerate(A_CONDS, 1) if all(isint(f[n]) for n in c)]
    b_hits = [k for k, c in enumerate(B_CONDS, 1) if b_ok(f, c)]
    b_sym = b_ok(f, B8_SYMMETRIC)
    return a_hits, b_hits, b_sym


def v(*xs):
    a = [Q(x) for x in xs]
    return a


def fill(a0, a1, a2, a3, a5):
    """Solve the constraint for a4."""
    a4 = 1 - a0 - a1 - 2 * a2 - 2 * a3 - a5
    return [Q(a0), Q(a1), Q(a2), Q(a3), a4, Q(a5)]


GRID = [
    (v(0, 0, 0, 0, 1, 0), "A_point", "required point; seeds at the point itself"),
    (v(-1, 1, 0, 0, 1, 0), "A_point", "required; one inverse shift from the point"),
    (v(1, 0, 0, 0, 0, 0), "A_std", "integer vector off the parity class of the point"),
    (v(2, 0, 0, 0, -1, 0), "A_point", "even a0 reaches the point by shifts"),
    (fill(Q(1, 3), 0, 0, 0, 0), "A_std", "a1 = a2 = a3 = a5 = 0 with a0 free"),
    (fill(0, Q(1, 3), Q(-1, 3), 0, 0), "A_std", "a2 alone is not integral"),
    (fill(Q(2, 5), 0, 0, 0, Q(3, 5)), "A_std", "a4 integral instead of a5"),
    (fill(0, Q(2, 3), 0, Q(1, 3), Q(-1, 3)), "A_std", "a3 + a5 integral"),
    (fill(Q(1, 4), 1, Q(-1, 4), Q(1, 4), 0), "A_std", "a0 + a2 and a3 + a4 integral"),
    (fill(3, -2, 1, 2, -1), "A_std", "all integral, larger entries"),
    (v(Q(1, 2), Q(1, 2), 0, Q(1, 3), Q(-1, 3), Q(-1, 3)), "B_I", "required; the one-parameter family"),
    (fill(Q(1, 4), Q(1, 4), Q(1, 5), Q(1, 10), Q(-1, 20)), "B_I", "both differences zero"),
    (v(0, 1, Q(-1, 2), 0, 0, 1), "B_I", "both differences odd"),
    (v(3, -2, Q(1, 2), 0, -1, 0), "B_I", "differences -5 and 1"),
    (v(Q(5, 2), Q(1, 2), -1, 0, Q(3, 4), Q(-3, 4)), "B_I", "-a4-a5 integral, same parity as -a0+a1"),
    (fill(Q(1, 2), Q(1, 2), Q(1, 3), Q(1, 5), Q(-127, 105)), "B_I", "-a0+a1 and -a0-a1 of opposite parity"),
    (fill(Q(1, 3), Q(1, 5), Q(1, 7), Q(-86, 210), Q(1, 2)), "B_I", "a4 + a5 odd, a5 - a4 even"),
    (fill(Q(1, 3), Q(1, 7), Q(-5, 21), Q(3, 10), Q(1, 5)), "B_I", "-a0-a1-2a2 and -a4+a5 both even"),
    (fill(Q(1, 3), Q(1, 3), Q(1, 6), Q(1, 5), Q(-19, 35)), "B_I", "-a0+a1 and -2a3-a4-a5 both zero"),
    (fill(Q(1, 3), Q(-1, 3), Q(1, 2), Q(1, 5), Q(-19, 35)), "B_I",
     "image under s1 of the previous vector; only the symmetric reading of B(8) sees it"),
    (v(Q(1, 7), Q(1, 7), Q(1, 7), Q(1, 7), Q(1, 7), 0), None, "required negative"),
    (fill(Q(1, 3), Q(1, 5), Q(1, 7), Q(1, 11), Q(1, 13)), None, "generic negative"),
    (fill(Q(2, 3), Q(1, 4), Q(-1, 5), Q(1, 6), Q(1, 9)), None, "generic negative"),
    (fill(Q(1, 2), Q(1, 3), Q(1, 5), Q(1, 7), Q(1, 11)), None, "a0 half-integral only"),
    (fill(Q(1, 3), 0, Q(1, 5), Q(1, 7), Q(2, 9)), None, "a1 integral only"),
    (fill(Q(1, 2), Q(1, 2), Q(1, 3), Q(1, 5), Q(1, 7)), "B_I", "a0 = a1 = 1/2 forces B(3)"),
    (fill(Q(1, 4), Q(3, 4), Q(1, 3), Q(1, 9), Q(1, 7)), None, "-a0-a1 integral only"),
]


def main():
    out = []
    for a, form, why in GRID:
        assert sum(a) + a[2] + a[3] == 1, a
        a_hits, b_hits, b_sym = annotate(a)
        exists_printed = bool(a_hits or b_hits)
        exists_sym = bool(a_hits or b_hits or b_sym)
        if form is None:
            assert not exists_sym, (a, a_hits, b_hits)
        elif form.startswith("A"):
            assert a_hits, a
        else:
            assert b_hits or b_sym, a
        out.append({
            "params": [str(x) for x in a],
            "exists": exists_sym,
            "exists_printed_conditions": exists_printed,
            "form": form,
            "type_a": a_hits,
            "type_b": b_hits + ([8] if b_sym and 8 not in b_hits else []),
            "derivation": why,
        })
    path = Path(__file__).resolve().parents[1] / "src" / "d5rational" / "data" / "grid.json"
    path.write_text(json.dumps({"vectors": out}, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(out)} vectors to {path}")


if __name__ == "__main__":
    main()
