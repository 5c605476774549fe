import json
from fractions import Fraction

import pytest
import sympy as sp

from d5rational.algebra import ParamRat, parse_expr
from d5rational.errors import ChartError, NotASolution, ParamsError, ParseError
from d5rational.system import (Params, Solution, hamilton_identity_check, hamiltonian,
                               hamiltonian_eval, is_rational_solution, require_solution,
                               residual, rhs_finite, rhs_m2, rhs_m3, solutions_from_json,
                               solutions_to_json)

x, y, z, w, t = sp.symbols("x y z w t")
a1, a2, a3, a4, a5 = sp.symbols("a1:6")
a0 = 1 - a1 - 2 * a2 - 2 * a3 - a4 - a5
AL = (a0, a1, a2, a3, a4, a5)


def h_v(q, p, g1, g2, g3):
    return q * (q - 1) * p * (p + t) - (g1 + g3) * q * p + g1 * p + g2 * t * q


# oracle Hamiltonian assembled from two P_V pieces and the coupling term
H = (h_v(x, y, a2 + a5, a1, a2 + 2 * a3 + a4) + h_v(z, w, a5, a3, a4)
     + 2 * y * z * ((z - 1) * w + a3))


def test_hamiltonian_matches_oracle():
    assert sp.expand(hamiltonian(AL, x, y, z, w, t) - H) == 0


def test_rhs_is_hamiltonian_flow():
    fx, fy, fz, fw = rhs_finite(AL, x, y, z, w, t)
    assert sp.expand(fx - sp.diff(H, y)) == 0
    assert sp.expand(fy + sp.diff(H, x)) == 0
    assert sp.expand(fz - sp.diff(H, w)) == 0
    assert sp.expand(fw + sp.diff(H, z)) == 0


def test_hamilton_identity_check():
    assert hamilton_identity_check() == {"x": True, "y": True, "z": True, "w": True}


def _chart_flow(new, inverse):
    """t d/dt of chart coordinates, pulled back and rewritten in chart variables."""
    f = rhs_finite(AL, x, y, z, w, t)
    out = []
    for c in new:
        flow = sum(sp.diff(c, v) * fv for v, fv in zip((x, y, z, w), f))
        out.append(sp.simplify(flow.subs(inverse, simultaneous=True)))
    return out


def test_chart_m2_equations():
    x2, y2, z2, w2 = sp.symbols("x2 y2 z2 w2")
    new = (-((x - z) * y - a2) * y, 1 / y, z, w + y)
    inverse = {y: 1 / y2, w: w2 - 1 / y2, z: z2, x: z2 + (a2 - x2 * y2) * y2}
    expected = _chart_flow(new, inverse)
    ours = rhs_m2(AL, x2, y2, z2, w2, t)
    for e, o in zip(expected, ours):
        assert sp.simplify(e - o) == 0


def test_chart_m3_equations():
    x3, y3, z3, w3 = sp.symbols("x3 y3 z3 w3")
    new = (x, y, 1 / z, -z * (w * z + a3))
    inverse = {x: x3, y: y3, z: 1 / z3, w: (-w3 * z3 - a3) * z3}
    expected = _chart_flow(new, inverse)
    ours = rhs_m3(AL, x3, y3, z3, w3, t)
    for e, o in zip(expected, ours):
        assert sp.simplify(e - o) == 0


def test_params_constraint():
    p = Params.parse("0,0,0,0,1,0")
    assert p[4] == 1
    with pytest.raises(ParamsError):
        Params.parse("1,1,1,1,1,1")
    with pytest.raises(ParamsError):
        Params.parse("0,0,1")
    assert Params.parse('["1/2","1/2",0,"1/3","-1/3","-1/3"]')[3] == Fraction(1, 3)
    with pytest.raises(ParseError):
        Params.parse("0,0,0,0,1,q")


def test_symbolic_params():
    p = Params.symbolic()
    assert not p.is_concrete()
    assert isinstance(p[0], ParamRat)
    assert Params.from_free(0, 0, 0, 1, 0) == Params.parse("0,0,0,0,1,0")


def test_residual_of_known_solution():
    p = Params.parse("0,0,0,0,1,0")
    good = Solution.finite("0", "-t", "0", "t")
    assert is_rational_solution(good, p)
    bad = Solution.finite("0", "t", "0", "t")
    res = residual(bad, p)
    assert str(res[1]) == "-2*t^2"
    with pytest.raises(NotASolution):
        require_solution(bad, p)


def test_residual_against_sympy():
    p = Params.from_free(Fraction(1, 5), 0, Fraction(1, 7), 0, Fraction(-11, 105))
    sol = Solution.finite("1/(t+1)", "t^2", "2", "(t-1)/t")
    sym = [sp.sympify(str(c).replace("^", "**"), locals={"t": t}) for c in sol.comps]
    al = tuple(sp.Rational(v.numerator, v.denominator) for v in p)
    rhs = rhs_finite(al, *sym, t)
    for ours, comp, r in zip(residual(sol, p), sym, rhs):
        ref = sp.cancel(t * sp.diff(comp, t) - r)
        assert sp.cancel(sp.sympify(str(ours).replace("^", "**"), locals={"t": t}) - ref) == 0


def test_hamiltonian_eval_rejects_charts():
    p = Params.parse("0,0,0,0,1,0")
    h = hamiltonian_eval(Solution.finite("0", "-t", "0", "t"), p)
    assert h == parse_expr("0")
    with pytest.raises(ChartError):
        hamiltonian_eval(Solution("inf_z", *(parse_expr("0"),) * 4), p)


def test_solution_json_roundtrip():
    sols = [Solution.finite("t/(t-1)", "-1", "a1", "0"),
            Solution("inf_yw", parse_expr("t/4"), parse_expr("0"), parse_expr("1/2"), parse_expr("-t/2"))]
    data = json.loads(json.dumps(solutions_to_json(sols)))
    assert solutions_from_json(data) == sols
    assert sols[1].is_infinite()
    bad = Solution("inf_z", *(parse_expr("1"),) * 4)
    with pytest.raises(ChartError):
        bad.require_infinite()
