from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from shiftmac.algebra import (
    ONE,
    Q,
    T,
    ZERO,
    CoeffField,
    ExactDivisionError,
    LimitError,
    QTPoly,
    SubstitutionError,
    UnivariateRational,
    XPolynomial,
    limit_at_one,
    qt_monomial,
    substitute_params,
)

sq, st_, su = sp.symbols("q t u")


def to_sympy(c: CoeffField):
    def poly(p):
        return sum(sp.Rational(v.numerator, v.denominator) * sq ** a * st_ ** b for (a, b), v in p.terms())
    return poly(c.num) / poly(c.den)


def from_terms(terms):
    return CoeffField(QTPoly({k: Fraction(v) for k, v in terms.items()}))


small_qt = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-3, 3), max_size=4
).map(from_terms)
nonzero_qt = small_qt.filter(lambda c: not c.is_zero())
fields = st.tuples(small_qt, nonzero_qt).map(lambda p: p[0] / p[1])
nonzero_fields = st.tuples(nonzero_qt, nonzero_qt).map(lambda p: p[0] / p[1])


# -- CoeffField -------------------------------------------------------------


def test_inverse_pair():
    assert (Q / T) * (T / Q) == ONE


def test_gcd_cancellation():
    assert (1 - Q ** 2) / (1 - Q) == 1 + Q
    assert ((1 - Q ** 2) / (1 - Q)).den == QTPoly({(0, 0): 1})


def test_cross_multiplication_example():
    lhs = (1 - Q * T) / (1 - T) + (Q - Q * T) / (1 - T)
    expected = sp.cancel(((1 - sq * st_) + (sq - sq * st_)) / (1 - st_))
    assert sp.simplify(to_sympy(lhs) - expected) == 0
    assert lhs == (1 - Q * T + Q - Q * T) / (1 - T)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_denominator_normalization():
    c = (2 * Q) / (-4 * Q * T + 2)
    den = c.den
    lead = max(den.terms())
    assert lead[1] > 0
    assert all(v.denominator == 1 for _, v in den.terms())
    from math import gcd
    g = 0
    for _, v in den.terms():
        g = gcd(g, int(v))
    assert g == 1


@given(fields, fields, fields)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(nonzero_fields)
def test_multiplicative_inverse(a):
    assert a * a.inverse() == ONE


@given(fields, fields)
def test_arithmetic_matches_sympy(a, b):
    for ours, theirs in ((a + b, to_sympy(a) + to_sympy(b)), (a * b, to_sympy(a) * to_sympy(b))):
        assert sp.simplify(to_sympy(ours) - theirs) == 0


@given(fields)
def test_canonical_form_idempotent(a):
    again = CoeffField(a.num, a.den)
    assert again.canonical_str() == a.canonical_str()
    assert CoeffField.parse(a.canonical_str()) == a
    assert CoeffField.parse(a.canonical_str()).canonical_str() == a.canonical_str()


def test_canonical_string_shape():
    c = (1 + Q * T) / (2 - T)
    assert c.canonical_str() == "(-1+-1*q^1*t^1)/(-2+1*t^1)"
    assert ZERO.canonical_str() == "(0)/(1)"
    assert QTPoly.parse("3/2*q^2+-1*t^1") == QTPoly({(2, 0): Fraction(3, 2), (0, 1): -1})


# -- substitution -------------------------------------------------------------


def test_substitute_t_power():
    assert substitute_params(1 - T, t="q^2") == 1 - Q ** 2


def test_substitute_inversion_example():
    c = (1 - Q * T) / (1 - T)
    got = substitute_params(c, q="1/q", t="1/t")
    assert got == (Q * T - 1) / (Q * (T - 1))
    assert sp.simplify(to_sympy(got) - (1 - 1 / (sq * st_)) / (1 - 1 / st_)) == 0


@given(fields)
def test_inversion_is_involution(a):
    once = substitute_params(a, q="1/q", t="1/t")
    assert substitute_params(once, q="1/q", t="1/t") == a


@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 3), st.integers(1, 3))
def test_monomial_to_u(a, b, r, p):
    got = substitute_params(qt_monomial(a, b), q=f"u^{r}", t=f"u^{p}")
    assert got == UnivariateRational.gen("u") ** (a * r + b * p)


def test_substitute_other_targets():
    assert substitute_params(Q + T, t="t/q") == Q + T / Q
    assert substitute_params(Q * T, q="2", t="1/2") == ONE
    assert substitute_params(Q, q="q^-1") == 1 / Q


def test_substitution_zero_denominator():
    with pytest.raises(SubstitutionError):
        substitute_params(1 / (Q - T), t="q")


def test_substitute_xpolynomial():
    p = XPolynomial.var(2, 0).scale(T) + XPolynomial.var(2, 1).scale(Q)
    got = substitute_params(p, t="q^3")
    assert got == XPolynomial.var(2, 0).scale(Q ** 3) + XPolynomial.var(2, 1).scale(Q)


# -- limits -------------------------------------------------------------------

u = UnivariateRational.gen("u")


def test_limit_examples():
    assert limit_at_one((1 - u ** 2) / (1 - u)) == 2
    assert limit_at_one((1 - u ** 3) / (1 - u ** 2)) == Fraction(3, 2)
    with pytest.raises(LimitError):
        limit_at_one((1 - u) / (1 - u) ** 2)


@given(st.integers(1, 6), st.integers(1, 6))
def test_limit_matches_sympy(a, b):
    f = (1 - u ** a) / (1 - u ** b)
    assert limit_at_one(f) == Fraction(str(sp.limit((1 - su ** a) / (1 - su ** b), su, 1)))


def test_limit_vanishing_numerator():
    assert limit_at_one((1 - u) ** 2 / (1 - u ** 3)) == 0


# -- XPolynomial --------------------------------------------------------------

x1, x2, x3 = (XPolynomial.var(3, i) for i in range(3))


def test_exact_divide_examples():
    assert (x1 ** 2 - x2 ** 2).exact_divide(x1 - x2) == x1 + x2
    a = x1 * x2.scale(Q) + x3
    assert a.exact_divide(XPolynomial.constant(3, ONE)) == a


def test_exact_divide_remainder_reported():
    with pytest.raises(ExactDivisionError) as info:
        (x1 ** 2 + x2).exact_divide(x1 - x2)
    assert info.value.remainder is not None


def test_vandermonde_round_trip():
    v = (x1 - x2) * (x1 - x3) * (x2 - x3)
    m = XPolynomial.monomial((2, 0, 3), Q / T)
    assert (v * m).exact_divide(v) == m


monomials = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
sparse = st.dictionaries(monomials, fields.filter(lambda c: not c.is_zero()), min_size=1, max_size=6).map(
    lambda d: XPolynomial(3, d)
)


@given(sparse, sparse)
def test_exact_divide_property(a, b):
    assert (a * b).exact_divide(b) == a


@given(sparse, sparse, sparse)
def test_polynomial_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


def test_compose_and_evaluate():
    p = x1 ** 2 + x2.scale(T)
    g = p.compose(0, x3 + 1)
    assert g == (x3 + 1) ** 2 + x2.scale(T)
    assert p.evaluate([Q, ONE, ONE]) == Q ** 2 + T


def test_leading_term_and_sorting():
    p = x1 * x3 + x2 ** 3 + x1
    exps = [e for e, _ in p.sorted_terms()]
    assert exps == sorted(exps, reverse=True)
    assert p.leading_term()[0] == (1, 0, 1)
