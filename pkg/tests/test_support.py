import json
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from shiftmac.algebra import ONE, Q, T, XPolynomial
from shiftmac.linalg import SingularSystemError, solve
from shiftmac.report import Timer, VerificationReport, compare_polys, compare_values, make_report
from shiftmac.symmetric import NotSymmetricError, SymPoly, monomial_symmetric


matrices = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n),
        st.lists(st.integers(-5, 5), min_size=n, max_size=n),
    )
)


@given(matrices)
def test_solve_matches_sympy(system):
    a, b = system
    m = sp.Matrix(a)
    fa = [[Fraction(v) for v in row] for row in a]
    fb = [Fraction(v) for v in b]
    if m.det() == 0:
        with pytest.raises(SingularSystemError):
            solve(fa, fb)
        return
    x = solve(fa, fb)
    expected = m.LUsolve(sp.Matrix(b))
    assert [sp.Rational(v.numerator, v.denominator) for v in x] == list(expected)


def test_solve_over_rational_functions():
    x = solve([[Q, ONE], [ONE, T]], [Q + 1, T + 1])
    assert Q * x[0] + x[1] == Q + 1 and x[0] + T * x[1] == T + 1


def test_solve_shape_error():
    with pytest.raises(ValueError):
        solve([[ONE, ONE]], [ONE])


def test_monomial_symmetric_and_round_trip():
    m = monomial_symmetric((2, 1), 3)
    assert len(m.terms) == 6
    s = SymPoly.from_xpoly(m)
    assert s.to_xpoly() == m
    assert s.coeff((2, 1)) == ONE
    with pytest.raises(NotSymmetricError):
        SymPoly.from_xpoly(XPolynomial.var(2, 0))


def test_sympoly_arithmetic():
    a = SymPoly.from_xpoly(monomial_symmetric((1,), 2))
    prod = a * a
    assert prod == SymPoly(2, {(2,): ONE, (1, 1): 2 * ONE})
    assert (prod - prod).coeffs == {}
    assert prod.leading() == ((2,), ONE)
    with pytest.raises(ValueError):
        SymPoly(1, {(1, 1): ONE})


def test_report_invariants():
    timer = Timer()
    ok = make_report("x", {"mu": "1"}, None, timer)
    assert ok.passed and ok.witness is None
    bad = VerificationReport("x", {}, "fail")
    assert bad.witness is not None  # a failure always carries a witness
    with pytest.raises(ValueError):
        VerificationReport("x", {}, "maybe")
    doc = json.loads(ok.to_json())
    assert doc["status"] == "pass" and "detail" not in doc


def test_compare_polys_witness():
    a = XPolynomial.var(2, 0) + XPolynomial.var(2, 1)
    b = XPolynomial.var(2, 0) + XPolynomial.var(2, 1).scale(T)
    w = compare_polys(a, b)
    assert w["monomial"] == [0, 1]
    assert w["lhs"] == "(1)/(1)" and w["rhs"] == "(1*t^1)/(1)"
    assert compare_polys(a, a) is None
    assert compare_values(Q, T)["lhs"] == "(1*q^1)/(1)"
