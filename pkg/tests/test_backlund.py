import random
import time
from fractions import Fraction

import pytest
import sympy as sp

from d5rational.backlund import (BRAID_EDGES, GENERATORS, IDENTITY, _raw_action, apply_transform,
                                 apply_word, chart_convert, expand_word, inf_yw_condition,
                                 inf_z_condition, infinite_solution, param_action, param_matrix,
                                 relations_summary, shift_word, verify_relations)
from d5rational.errors import ChartError, NotASolution, WordError
from d5rational.system import Params, Solution, is_rational_solution, rhs_finite

x, y, z, w, t = sp.symbols("x y z w t")
_a = sp.symbols("a1:6")
A = (1 - _a[0] - 2 * _a[1] - 2 * _a[2] - _a[3] - _a[4], *_a)

# transcription of the generator table: (images of x, y, z, w), t -> -t?, parameter images
TABLE = {
    "s0": ((x + A[0] / (y + t), y, z, w), False, (-A[0], A[1], A[2] + A[0], A[3], A[4], A[5])),
    "s1": ((x + A[1] / y, y, z, w), False, (A[0], -A[1], A[2] + A[1], A[3], A[4], A[5])),
    "s2": ((x, y - A[2] / (x - z), z, w + A[2] / (x - z)), False,
           (A[0] + A[2], A[1] + A[2], -A[2], A[3] + A[2], A[4], A[5])),
    "s3": ((x, y, z + A[3] / w, w), False, (A[0], A[1], A[2] + A[3], -A[3], A[4] + A[3], A[5] + A[3])),
    "s4": ((x, y, z, w - A[4] / (z - 1)), False, (A[0], A[1], A[2], A[3] + A[4], -A[4], A[5])),
    "s5": ((x, y, z, w - A[5] / z), False, (A[0], A[1], A[2], A[3] + A[5], A[4], -A[5])),
    "p1": ((1 - x, -y - t, 1 - z, -w), False, (A[1], A[0], A[2], A[3], A[5], A[4])),
    "p2": (((y + w + t) / t, -t * (z - 1), (y + t) / t, -t * (x - z)), True,
           (A[5], A[4], A[3], A[2], A[1], A[0])),
    "p3": ((1 - x, -y, 1 - z, -w), True, (A[0], A[1], A[2], A[3], A[5], A[4])),
    "p4": ((x, y + t, z, w), True, (A[1], A[0], A[2], A[3], A[4], A[5])),
}


@pytest.mark.parametrize("g", GENERATORS)
def test_table_maps_flow_to_flow(g):
    """The oracle table itself: images satisfy the system at the new parameters."""
    images, flip, new = TABLE[g]
    f = rhs_finite(A, x, y, z, w, t)
    tt = -t if flip else t
    target = rhs_finite(new, *images, tt)
    for img, tgt in zip(images, target):
        # t d/dt is unchanged by t -> -t
        lhs = t * sp.diff(img, t) + sum(sp.diff(img, v) * fv for v, fv in zip((x, y, z, w), f))
        assert sp.simplify(lhs - tgt) == 0


@pytest.mark.parametrize("g", GENERATORS)
def test_raw_action_matches_table(g):
    ours = _raw_action(g, A, x, y, z, w, t)
    images, flip, _ = TABLE[g]
    assert ours[4] == flip
    for a, b in zip(ours[:4], images):
        assert sp.simplify(a - b) == 0


@pytest.mark.parametrize("g", GENERATORS)
def test_param_action_matches_table(g):
    rng = random.Random(7)
    free = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(5)]
    p = Params.from_free(*free)
    new = TABLE[g][2]
    values = dict(zip(_a, [sp.Rational(str(q)) for q in free]))
    expected = [sp.Rational(str(v.subs(values))) for v in new]
    assert [sp.Rational(str(v)) for v in param_action(g, p)] == expected


def test_relations_report_and_runtime():
    start = time.perf_counter()
    rep = verify_relations(seed=0)
    elapsed = time.perf_counter() - start
    assert rep["ok"], rep["failures"]
    assert (rep["involutions"], rep["braid"], rep["commuting"], rep["pi_conjugations"]) == (10, 5, 40, 24)
    assert relations_summary(rep) == "relations verified: 10 involutions, 5 braid, 40 commuting, π-conjugations OK"
    assert elapsed < 1.0


def test_braid_edges_are_order_three():
    for i, j in BRAID_EDGES:
        assert param_matrix([f"s{i}", f"s{j}"] * 3) == IDENTITY
        assert param_matrix([f"s{i}", f"s{j}"]) != IDENTITY


def test_shift_words_and_inverses():
    for i in range(1, 7):
        m = param_matrix(shift_word(i))
        assert m.is_translation()
        assert param_matrix(shift_word(i) + shift_word(i, inverse=True)) == IDENTITY


def test_expand_word_syntax():
    assert expand_word("s0 s1") == ["s0", "s1"]
    assert expand_word("π1 p2") == ["p1", "p2"]
    assert expand_word("T1'") == expand_word("T1′") == expand_word("T1^-1") == shift_word(1, True)
    with pytest.raises(WordError):
        expand_word("s6")


def test_generators_preserve_solutions_and_are_involutions():
    p = Params.parse("0,0,0,0,1,0")
    sol = Solution.finite("0", "-t", "0", "t")
    for g in GENERATORS:
        try:
            img, q = apply_transform(g, sol, p)
        except NotASolution:
            continue
        assert is_rational_solution(img, q), g
        back, p2 = apply_transform(g, img, q)
        assert p2 == p
        assert back == sol


def test_degenerate_s2_goes_through_chart():
    p = Params.from_free(Fraction(1, 2) - Fraction(1, 3) - 0 - Fraction(1, 7), Fraction(1, 3), 0,
                         Fraction(1, 7), Fraction(1, 7))
    seed = Solution.finite("1/2", "-t/2", "1/2", "0")
    assert is_rational_solution(seed, p)
    img, q = apply_transform("s2", seed, p)
    assert img.kind == "inf_yw" and img.is_infinite()
    assert is_rational_solution(img, q)
    back, p2 = apply_transform("s2", img, q)
    assert p2 == p and back == seed


def test_undefined_action_raises():
    p = Params.parse("0,1,0,0,0,0")
    sol = Solution.finite("0", "0", "0", "0")
    with pytest.raises(NotASolution):
        apply_transform("s1", sol, p)


def test_chart_roundtrip():
    p = Params.from_free(Fraction(1, 5), 0, Fraction(1, 7), 0, Fraction(1, 3))
    sol = Solution.finite("t", "t+1", "2", "1/t")
    for target in ("m2", "m3"):
        there = chart_convert(sol, target, p)
        assert chart_convert(there, "finite", p) == sol
    with pytest.raises(ChartError):
        chart_convert(Solution.finite("t", "0", "1", "1"), "m2", p)


@pytest.mark.parametrize("params", ["0,0,0,0,1,0", "1/2,1/2,0,1/3,-1/3,-1/3", "0,0,1/2,0,0,0",
                                    "1/7,1/7,1/7,1/7,1/7,0"])
def test_infinite_solution_iff(params):
    p = Params.parse(params)
    found = infinite_solution(p)
    assert any(s.kind == "inf_yw" for s in found) == inf_yw_condition(p)
    assert any(s.kind == "inf_z" for s in found) == inf_z_condition(p)
    for s in found:
        assert s.is_infinite() and is_rational_solution(s, p)


def test_apply_word_returns_params():
    p = Params.parse("0,0,0,0,1,0")
    sol, q = apply_word("T2", Solution.finite("0", "-t", "0", "0"), p)
    assert tuple(q) == tuple(Params.parse("-1,1,0,0,1,0"))
    assert is_rational_solution(sol, q)
