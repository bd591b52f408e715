"""Ordinary Macdonald polynomials P_mu(x; q, t) in finitely many variables.

P_mu is produced as the eigenvector of the q-difference operator D that is
unitriangular in the monomial basis; the tableau sum over branching
coefficients provides an independent construction.
"""
from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .algebra import (
    ONE,
    Q,
    CoeffField,
    ExactDivisionError,
    XPolynomial,
    parse_param_expr,
    q_power,
    qt_monomial,
    substitute_params,
)
from .combinatorics import (
    Partition,
    conjugate,
    dominates,
    enumerate_reverse_tableaux,
    partitions_of,
)
from .linalg import SingularSystemError
from .qcalc import beta_density, capital_C, interlacing_integral, vandermonde, vandermonde_theta
from .report import Timer, compare_polys, make_report
from .symmetric import SymPoly, monomial_symmetric

__all__ = [
    "MacOperatorSpec",
    "STANDARD",
    "apply_D",
    "apply_D_xpoly",
    "eigenvalue",
    "macdonald_P",
    "macdonald_P_xpoly",
    "macdonald_P_tableaux",
    "specialize_theta",
    "to_P_basis",
    "extract_psi",
    "psi_table",
    "psi_of_tableau",
    "macdonald_integral_side",
    "verify_theorem_I",
    "verify_eigen_relation",
    "check_conjugation_identity",
    "check_reciprocal_identity",
    "check_E_stability",
    "operator_lemma_checks",
]


# ---------------------------------------------------------------------------
# the operator D
# ---------------------------------------------------------------------------


def _monomial_value(expr) -> CoeffField:
    coeff, exps = parse_param_expr(expr)
    if "u" in exps:
        raise ValueError("operator parameters must be monomials in q and t")
    return qt_monomial(exps.get("q", 0), exps.get("t", 0), coeff)


@dataclass(frozen=True)
class MacOperatorSpec:
    """Parameters of D(qsub, tsub); e.g. ("1/q", "t/q")."""

    qsub: str = "q"
    tsub: str = "t"

    def values(self, theta=None):
        qv, tv = _monomial_value(self.qsub), _monomial_value(self.tsub)
        if theta is not None:
            qv, tv = specialize_theta(qv, theta), specialize_theta(tv, theta)
        return qv, tv


STANDARD = MacOperatorSpec()


def specialize_theta(c, theta):
    """Put t = q^theta in a coefficient (identity when theta is None)."""
    if theta is None:
        return c
    return substitute_params(c, t=f"q^{int(theta)}")


def apply_D_xpoly(qv, tv, f: XPolynomial) -> XPolynomial:
    """sum_i prod_{j != i} (tv x_i - x_j)/(x_i - x_j) f(.., qv x_i, ..).

    All summands are put over the common denominator V(x): the i-th gets the
    numerator (-1)^(i-1) V(x without x_i) prod_{j != i}(tv x_i - x_j), and
    the sum is divided exactly by V(x).
    """
    n = f.nvars
    xs = [XPolynomial.var(n, i) for i in range(n)]
    total = XPolynomial(n)
    for i in range(n):
        num = vandermonde(n - 1, [j for j in range(n) if j != i], n)
        if i % 2:
            num = -num
        for j in range(n):
            if j != i:
                num = num * (xs[i].scale(tv) - xs[j])
        shift = [None] * n
        shift[i] = qv
        total = total + num * f.scale_vars(shift)
    return total.exact_divide(vandermonde(n))


# Caches below are filled idempotently: two threads racing on the same key
# compute equal values, and dict assignment is atomic.
_D_CACHE = {}
_D_LOCK = threading.Lock()


def _D_on_monomial(spec: MacOperatorSpec, theta, n: int, lam: Partition) -> SymPoly:
    key = (spec, theta, n, lam)
    hit = _D_CACHE.get(key)
    if hit is not None:
        return hit
    qv, tv = spec.values(theta)
    one = ONE
    out = SymPoly.from_xpoly(apply_D_xpoly(qv, tv, monomial_symmetric(lam, n, one)), check=False)
    with _D_LOCK:
        _D_CACHE[key] = out
    return out


def apply_D(spec: MacOperatorSpec, f: SymPoly, theta=None) -> SymPoly:
    """D(spec) applied to a symmetric polynomial, using cached images of m_lam."""
    res = SymPoly(f.nvars)
    for lam, c in f.coeffs.items():
        res = res + _D_on_monomial(spec, theta, f.nvars, lam).scale(c)
    return res


def eigenvalue(mu, n: int, spec: MacOperatorSpec = STANDARD, theta=None) -> CoeffField:
    """sum_i Q^(mu_i) T^(n-i) for D(Q, T)."""
    mu = Partition(mu)
    qv, tv = spec.values(theta)
    val = CoeffField(0)
    for i in range(1, n + 1):
        val = val + qv ** mu.part(i) * tv ** (n - i)
    return val


# ---------------------------------------------------------------------------
# P_mu
# ---------------------------------------------------------------------------


def _lower_set(mu: Partition, n: int):
    """Partitions below mu in dominance with at most n parts, lex descending."""
    return [k for k in partitions_of(mu.size, n) if dominates(mu, k)]


@lru_cache(maxsize=None)
def _macdonald_P_generic(mu: Partition, n: int) -> SymPoly:
    basis = _lower_set(mu, n)
    if len(basis) == 1:
        return SymPoly(n, {mu: ONE})
    target = eigenvalue(mu, n)
    images = {k: _D_on_monomial(STANDARD, None, n, k) for k in basis}
    coeffs = {mu: ONE}
    for idx in range(1, len(basis)):
        kappa = basis[idx]
        rhs = CoeffField(0)
        for nu in basis[:idx]:
            c = coeffs.get(nu)
            m = images[nu].coeffs.get(kappa)
            if c is not None and m is not None:
                rhs = rhs - m * c
        diag = images[kappa].coeffs.get(kappa, CoeffField(0)) - target
        if not diag:
            raise SingularSystemError(f"degenerate eigenvalue at {kappa} for {mu}")
        if rhs:
            coeffs[kappa] = rhs / diag
    return SymPoly(n, coeffs)


@lru_cache(maxsize=None)
def _macdonald_P_theta(mu: Partition, n: int, theta) -> SymPoly:
    return _macdonald_P_generic(mu, n).map_coeffs(lambda c: specialize_theta(c, theta))


def macdonald_P(mu, n: int, theta=None) -> SymPoly:
    """P_mu in n variables; with ``theta`` the coefficients have t = q^theta."""
    mu = Partition(mu)
    if len(mu) > n:
        raise ValueError(f"{mu} has more than {n} parts")
    if theta is None:
        return _macdonald_P_generic(mu, n)
    return _macdonald_P_theta(mu, n, int(theta))


def macdonald_P_xpoly(mu, n: int, theta=None) -> XPolynomial:
    mu = Partition(mu)
    if len(mu) > n:
        return XPolynomial(n)
    return macdonald_P(mu, n, theta).to_xpoly()


def to_P_basis(f: SymPoly, theta=None):
    """Expand a symmetric polynomial over {P_nu}; returns {nu: coefficient}."""
    rest = SymPoly(f.nvars, dict(f.coeffs))
    out = {}
    while rest:
        lam, c = rest.leading()
        out[lam] = c
        rest = rest - macdonald_P(lam, f.nvars, theta).scale(c)
    return out


# ---------------------------------------------------------------------------
# branching coefficients psi
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _psi_table(mu: Partition, n: int):
    p = macdonald_P_xpoly(mu, n)
    table = {}
    for k, sl in p.collect(0).items():
        rest = SymPoly.from_xpoly(sl.drop_vars(range(1, n)))
        for nu, c in to_P_basis(rest).items():
            if nu.size + k != mu.size:
                raise ExactDivisionError(f"expansion of P_{mu} has an off-degree residual")
            table[nu] = c
    return table


def psi_table(mu, n=None):
    """{nu: psi_(mu,nu)} read off from P_mu(d, x_2, .., x_n) = sum psi d^|mu/nu| P_nu."""
    mu = Partition(mu)
    n = len(mu) + 1 if n is None else n
    if n <= len(mu):
        raise ValueError("need more variables than parts")
    return dict(_psi_table(mu, n))


def extract_psi(mu, nu, n=None) -> CoeffField:
    """psi_(mu,nu); zero when nu does not interlace mu."""
    return psi_table(mu, n).get(Partition(nu), CoeffField(0))


def psi_of_tableau(tab, max_entry: int) -> CoeffField:
    chain = tab.chain(max_entry)
    val = ONE
    for big, small in zip(chain, chain[1:]):
        if big != small:
            val = val * extract_psi(big, small)
    return val


def macdonald_P_tableaux(mu, n: int) -> SymPoly:
    """P_mu as the sum over reverse tableaux of psi_T prod_s x_T(s)."""
    mu = Partition(mu)
    terms = {}
    for tab in enumerate_reverse_tableaux(mu, n):
        e = [0] * n
        for _, v in tab.items():
            e[v - 1] += 1
        e = tuple(e)
        w = psi_of_tableau(tab, n)
        terms[e] = terms[e] + w if e in terms else w
    return SymPoly.from_xpoly(XPolynomial(n, terms))


# ---------------------------------------------------------------------------
# the q-integral representation
# ---------------------------------------------------------------------------


def macdonald_integral_side(mu, n: int, theta: int) -> XPolynomial:
    """(1/V^theta(x)) times the interlacing integral of P_mu(y) d beta(y|x)."""
    mu = Partition(mu)
    ring = 2 * n - 1
    py = macdonald_P_xpoly(mu, n - 1, theta).embed(ring, list(range(n, ring)))
    density, _ = beta_density(n, theta)
    integral = interlacing_integral(py * density, n)
    denom, _ = vandermonde_theta(n, theta)
    return integral.exact_divide(denom)


def verify_theorem_I(mu, n: int, theta: int):
    mu = Partition(mu)
    timer = Timer()
    inst = {"mu": mu.text(), "n": n, "theta": theta}
    if len(mu) >= n:
        raise ValueError("the integral representation needs fewer parts than variables")
    try:
        lhs = macdonald_integral_side(mu, n, theta)
    except ExactDivisionError as exc:
        return make_report("theorem1", inst, {"reason": "inexact division", "remainder_terms": len(exc.remainder or [])}, timer)
    rhs = macdonald_P_xpoly(mu, n, theta).scale(capital_C(mu, n, theta))
    return make_report("theorem1", inst, compare_polys(lhs, rhs), timer)


def verify_eigen_relation(mu, n: int):
    mu = Partition(mu)
    timer = Timer()
    p = macdonald_P(mu, n)
    lhs = apply_D(STANDARD, p)
    rhs = p.scale(eigenvalue(mu, n))
    return make_report("eigen", {"mu": mu.text(), "n": n}, compare_polys(lhs.to_xpoly(), rhs.to_xpoly()), timer)


# ---------------------------------------------------------------------------
# operator identities
# ---------------------------------------------------------------------------


class _Forms:
    """Product scalar * prod L^e of linear forms in x, exponents may be negative.

    A linear form is a tuple of coefficients whose first nonzero entry is 1.
    """

    def __init__(self, scalar=ONE, powers=None):
        self.scalar = scalar
        self.powers = Counter(powers or {})

    @staticmethod
    def normalize(coeffs):
        lead = next(c for c in coeffs if c)
        inv = 1 / lead
        return lead, tuple(c * inv if c else CoeffField(0) for c in coeffs)

    def times_form(self, coeffs, e=1):
        lead, form = self.normalize(coeffs)
        self.scalar = self.scalar * lead ** e
        self.powers[form] += e
        if not self.powers[form]:
            del self.powers[form]
        return self

    def split(self):
        num = Counter({f: e for f, e in self.powers.items() if e > 0})
        den = Counter({f: -e for f, e in self.powers.items() if e < 0})
        return num, den


def _form_poly(form, n):
    return XPolynomial(n, {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(form) if c})


def _expand(counter, n):
    p = XPolynomial.constant(n, ONE)
    for form, e in counter.items():
        fp = _form_poly(form, n)
        for _ in range(e):
            p = p * fp
    return p


def _diff_form(n, i, ci, j, cj):
    v = [CoeffField(0)] * n
    v[i] = v[i] + ci
    v[j] = v[j] + cj
    return v


def _theta_vandermonde_forms(n, theta, scale_index=None, scale=ONE):
    """Linear factors of the cleared V^theta, with x_scale_index -> scale * x."""
    out = _Forms()

    def c(idx):
        return scale if idx == scale_index else ONE

    for a in range(n):
        for b in range(a + 1, n):
            out.times_form(_diff_form(n, a, c(a), b, -c(b)))
    for i in range(n):
        for j in range(n):
            if i != j:
                for k in range(1, theta):
                    out.times_form(_diff_form(n, j, c(j), i, -q_power(k) * c(i)))
    return out


def check_conjugation_identity(f: XPolynomial, theta: int):
    """D(1/q,1/t)[f / V^theta] == (q/t)^(n-1) / V^theta * D(1/q,t/q) f, t = q^theta.

    Both sides are multiplied by V^theta; the left side is kept as a sum of
    products of linear forms, multiplied by the lcm of their denominators,
    and compared with the right side multiplied by the same lcm.
    """
    n = f.nvars
    qinv = q_power(-1)
    t = q_power(theta)
    tinv = 1 / t
    clearing = (n - 1) * (theta - 1)
    w = _theta_vandermonde_forms(n, theta)
    summands = []
    for i in range(n):
        term = _Forms(qinv ** clearing)
        for j in range(n):
            if j != i:
                term.times_form(_diff_form(n, i, tinv, j, -ONE))
                term.times_form(_diff_form(n, i, ONE, j, -ONE), -1)
        for form, e in w.powers.items():
            term.times_form(list(form), e)
        shifted = _theta_vandermonde_forms(n, theta, scale_index=i, scale=qinv)
        term.scalar = term.scalar * w.scalar / shifted.scalar
        for form, e in shifted.powers.items():
            term.times_form(list(form), -e)
        shift = [None] * n
        shift[i] = qinv
        summands.append((term, f.scale_vars(shift)))
    lcm = Counter()
    for term, _ in summands:
        _, den = term.split()
        for form, e in den.items():
            lcm[form] = max(lcm[form], e)
    lhs = XPolynomial(n)
    for term, fs in summands:
        num, den = term.split()
        mult = num + (lcm - den)
        lhs = lhs + _expand(mult, n).scale(term.scalar) * fs
    spec = MacOperatorSpec("1/q", "t/q")
    rhs_core = apply_D_xpoly(*spec.values(theta), f).scale((Q / t) ** (n - 1))
    rhs = rhs_core * _expand(lcm, n)
    return compare_polys(lhs, rhs)


def check_reciprocal_identity(f: XPolynomial):
    """D_{1/x}(q,t) f == t^(n-1) D_x(1/q,1/t) f for generic q, t.

    With d the top degree of f in each variable, h(y) = y^d f(1/y) is a
    polynomial and D_{1/x}(q,t) f = q^(-d) x^d (D_y(q,t) h)(1/x).
    """
    n = f.nvars
    d = max(f.degree_in(i) for i in range(n)) if f else 0
    h = XPolynomial(n, {tuple(d - a for a in e): c for e, c in f.terms.items()})
    dh = apply_D_xpoly(Q, qt_monomial(0, 1), h)
    lhs = XPolynomial(n, {tuple(d - a for a in e): c for e, c in dh.terms.items()}).scale(q_power(-d))
    rhs = apply_D_xpoly(q_power(-1), qt_monomial(0, -1), f).scale(qt_monomial(0, n - 1))
    return compare_polys(lhs, rhs)


def apply_E_xpoly(f: XPolynomial) -> XPolynomial:
    """E = t^(-n) D - sum_{i=1}^n t^(-i)."""
    n = f.nvars
    shift = CoeffField(0)
    for i in range(1, n + 1):
        shift = shift + qt_monomial(0, -i)
    return apply_D_xpoly(Q, qt_monomial(0, 1), f).scale(qt_monomial(0, -n)) - f.scale(shift)


def check_E_stability(f: XPolynomial):
    """E commutes with setting the last variable to zero."""
    n = f.nvars
    lhs = apply_E_xpoly(f).specialize(n - 1, 0)
    rhs = apply_E_xpoly(f.specialize(n - 1, 0))
    return compare_polys(lhs, rhs)


def operator_lemma_checks(n: int, sample_degree: int, theta: int = 2):
    """Run the three operator identities on every m_lam with |lam| <= sample_degree.

    Returns one aggregated report; the witness names the first failing case.
    """
    timer = Timer()
    cases = 0
    witness = None
    for size in range(sample_degree + 1):
        for lam in partitions_of(size, n):
            m = monomial_symmetric(lam, n)
            checks = [("conjugation", lambda: check_conjugation_identity(m, theta)),
                      ("reciprocal", lambda: check_reciprocal_identity(m))]
            if n >= 2:
                checks.append(("E-stability", lambda: check_E_stability(m)))
            for name, fn in checks:
                cases += 1
                w = fn()
                if w is not None and witness is None:
                    witness = dict(w, check=name, lam=lam.text())
    inst = {"n": n, "sample_degree": sample_degree, "theta": theta, "cases": cases}
    return make_report("lemmas", inst, witness, timer)
