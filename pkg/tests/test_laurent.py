from fractions import Fraction

import pytest
import sympy as sp

from d5rational.algebra import ParamRat, parse_expr
from d5rational.errors import BranchError, ChartError
from d5rational.laurent import (INF, BranchData, coefficient, detect_type, expand, expand_ratfun,
                                grow_branch, h_series, hamiltonian_constant, integrality_report,
                                rational_roots)
from d5rational.system import Params, Solution

T = sp.Symbol("t")
P = Params.from_free(Fraction(1, 3), Fraction(2, 7), Fraction(-1, 5), Fraction(3, 11), Fraction(1, 13))


def sympy_coeffs(text, point, lead, order):
    f = sp.sympify(text.replace("^", "**"), locals={"t": T})
    u = sp.Symbol("u")
    g = sp.series(f.subs(T, u + point), u, 0, lead + order + 1).removeO()
    g = sp.expand(g * u ** (-lead))
    return [sp.Rational(sp.Poly(g, u).coeff_monomial(u ** k)) for k in range(order)]


@pytest.mark.parametrize("text,point,lead", [
    ("(t^3 + 2*t - 1)/(t^2 - 3)", 0, 0),
    ("(t^3 + 2*t - 1)/(t^2 - 3)", 2, 0),
    ("(t^2 + 1)/(t^2*(t - 1))", 0, -2),
    ("(t + 5)/(t - 1)^2", 1, -2),
])
def test_finite_point_expansion_matches_sympy(text, point, lead):
    series = expand_ratfun(parse_expr(text), Fraction(point), 5, lead=lead)
    ours = [sp.Rational(str(c)) for c in series.coeffs]
    assert ours == sympy_coeffs(text, point, lead, 5)


def test_infinity_expansion_matches_sympy():
    f = parse_expr("(2*t^3 + t - 1)/(t^2 + 3*t)")
    s = expand_ratfun(f, INF, 5)
    assert s.lead == 1
    g = sp.sympify("(2*t**3 + t - 1)/(t**2 + 3*t)")
    u = sp.Symbol("u")
    ser = sp.expand(sp.series(g.subs(T, 1 / u), u, 0, 5).removeO() * u)
    ref = [sp.Rational(sp.Poly(ser, u).coeff_monomial(u ** k)) for k in range(5)]
    assert [sp.Rational(str(c)) for c in s.coeffs] == ref


def test_coefficient_helper():
    f = parse_expr("-t/2 + 3 + 1/t")
    assert coefficient(f, INF, 1) == Fraction(-1, 2)
    assert coefficient(f, INF, 0) == 3
    assert coefficient(f, INF, -1) == 1
    assert coefficient(f, 0, -1) == 1
    assert coefficient(f, INF, 5) == 0


def test_aligned_leads_for_solutions():
    sol = Solution.finite("0", "-t", "0", "t")
    xs, ys, zs, ws = expand(sol, INF, 3)
    assert (xs.lead, ys.lead) == (0, 1)
    assert ys.coeff(1) == -1 and ws.coeff(1) == 1
    with pytest.raises(ChartError):
        expand(Solution("inf_z", *(parse_expr("0"),) * 4), INF, 2)


def test_branch_holomorphic_at_infinity():
    a0, a1, a2, a3, a4, a5 = P
    x, y, z, w = grow_branch(P, BranchData((0, 0, 0, 0), {(0, 0): 0, (2, 0): 0}), INF, 4)
    assert x.coeff(-1) == a2 + a5
    assert y.coeff(0) == a1 and y.coeff(-1) == a1 * (-a1 - 2 * a3 - a4 + a5)
    assert z.coeff(-1) == a5
    assert w.coeff(-1) == a3 * (-a3 - a4 + a5)


def test_branch_agrees_with_known_solution():
    p = Params.parse("0,0,0,0,1,0")
    sol = Solution.finite("0", "-t", "0", "t")
    grown = grow_branch(p, BranchData((0, 1, 0, 1), {(0, 0): 0, (1, 1): -1, (2, 0): 0, (3, 1): 1}), INF, 4)
    for g, e in zip(grown, expand(sol, INF, 4, lead=(0, 1, 0, 1))):
        assert g.coeffs == e.coeffs


def test_branch_symbolic_parameters():
    s = Params.symbolic()
    x, y, z, w = grow_branch(s, BranchData((0, 0, 0, 0), {(0, 0): 0, (2, 0): 0}), INF, 3)
    a2, a5 = ParamRat.symbol("a2"), ParamRat.symbol("a5")
    assert x.coeff(-1) == a2 + a5


def test_branch_inconsistent():
    # x holomorphic with a_{inf,0} = 2 is impossible
    with pytest.raises(BranchError) as err:
        grow_branch(P, BranchData((0, 0, 0, 0), {(0, 0): 2, (2, 0): 0}), INF, 4)
    assert "inconsistent" in str(err.value)


def test_branch_underdetermined():
    with pytest.raises(BranchError) as err:
        grow_branch(P, BranchData((0, 0, 0, 0)), INF, 4, max_window=3)
    assert "not uniquely determined" in str(err.value)


def test_branch_at_zero():
    a0, a1, a2, a3, a4, a5 = P
    x, y, z, w = grow_branch(P, BranchData((0, 0, 0, 0), {(1, 0): 0, (3, 0): 0}), 0, 4)
    assert z.coeff(0) == a5 / (a4 + a5)
    assert hamiltonian_constant(P, (x, y, z, w), 0) == 0


def test_rational_roots():
    roots, rest = rational_roots(parse_expr("(t - 1/2)^2*(t + 3)*(t^2 + 1)").num)
    assert sorted(r for r, _ in roots) == [Fraction(-3), Fraction(1, 2)]
    assert rest.degree() == 2


def test_h_series_and_type():
    p = Params.parse("-1,1,0,0,1,0")
    sol = Solution.finite("t/(t - 1)", "-1", "0", "0")
    h = h_series(sol, p)
    assert set(h["residues"]) == {Fraction(1)}
    assert detect_type(sol, p) == "A"
    q = Params.parse("1/2,1/2,0,1/3,-1/3,-1/3")
    assert detect_type(Solution.finite("1/2", "-t/2", "1/2", "0"), q) == "B"


def test_integrality_report_on_known_solutions():
    p = Params.parse("-1,1,0,0,1,0")
    rep = integrality_report(Solution.finite("0", "-t - 1", "t/(t + 1)", "0"), p)
    assert rep["residue_diff_integer"] and rep["bd_diff_integer"] and rep["h_diff_nonneg_integer"]
