"""Shifted (interpolation) Macdonald polynomials P*_mu(x; q, t).

Three independent constructions are provided: interpolation through the
vanishing conditions, the reverse-tableau sum, and the recursion that
strips a full column.  Verifications of the integral representation,
branching rule and duality live here as well.
"""
from __future__ import annotations

from functools import lru_cache

from .algebra import (
    ONE,
    ZERO,
    CoeffField,
    ExactDivisionError,
    XPolynomial,
    q_power,
    qt_monomial,
    substitute_params,
)
from .combinatorics import (
    Partition,
    b_lambda,
    conjugate,
    enumerate_partitions,
    enumerate_reverse_tableaux,
    hook_H,
    interlaces,
)
from .linalg import solve
from .macdonald import extract_psi, macdonald_P, macdonald_P_xpoly, psi_of_tableau, specialize_theta, to_P_basis
from .qcalc import beta_density, capital_C, interlacing_integral, vandermonde_theta
from .report import Timer, compare_polys, compare_values, make_report
from .symmetric import SymPoly

__all__ = [
    "ShiftedPoly",
    "InterpolationError",
    "primed_scaling",
    "pstar_interpolate",
    "pstar_combinatorial",
    "pstar_recursion",
    "pstar",
    "pstar_eval",
    "eval_point",
    "expand_in_pstar",
    "generalized_qfactorial",
    "pstar_branch",
    "pstar_branch_extract",
    "shifted_integral_side",
    "verify_theorem_II",
    "omega_star_check",
    "powersum_duality_check",
    "shifted_power_sum",
    "verify_branching",
    "verify_equivalence",
    "verify_vanishing",
]


class InterpolationError(ArithmeticError):
    pass


class ShiftedPoly:
    """Polynomial in x_1..x_n meant to be symmetric in x_i t^(1-i)."""

    __slots__ = ("nvars", "poly")

    def __init__(self, nvars: int, poly: XPolynomial):
        if poly.nvars != nvars:
            raise ValueError("variable count mismatch")
        self.nvars = nvars
        self.poly = poly

    def swap_image(self, i: int, t=None) -> XPolynomial:
        """Image under x_i -> x_(i+1)/t, x_(i+1) -> x_i t (0-based i)."""
        t = qt_monomial(0, 1) if t is None else t
        factors = [None] * self.nvars
        factors[i] = 1 / t
        factors[i + 1] = t
        perm = list(range(self.nvars))
        perm[i], perm[i + 1] = i + 1, i
        return self.poly.scale_vars(factors).permute(perm)

    def is_shifted_symmetric(self, t=None) -> bool:
        return all(self.swap_image(i, t) == self.poly for i in range(self.nvars - 1))

    def map_coeffs(self, fn):
        return ShiftedPoly(self.nvars, self.poly.map_coeffs(fn))

    def __eq__(self, other):
        if not isinstance(other, ShiftedPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.poly == other.poly

    def __repr__(self):
        return f"ShiftedPoly({self.nvars}, {self.poly.pretty()!r})"


def primed_scaling(n: int, t=None, inverse=False):
    """Factors t^(1-i) (or t^(i-1)) for x_i -> x'_i."""
    t = qt_monomial(0, 1) if t is None else t
    out = []
    for i in range(1, n + 1):
        e = (i - 1) if inverse else (1 - i)
        out.append(t ** e if e else None)
    return out


def eval_point(lam, n: int, base=None):
    """(base^lam_1, .., base^lam_n) with base = q by default."""
    lam = Partition(lam)
    base = qt_monomial(1, 0) if base is None else base
    return [base ** lam.part(i) for i in range(1, n + 1)]


def pstar_eval(p, lam, base=None) -> CoeffField:
    """Value of a shifted polynomial at x_i = q^(lam_i) (1 beyond the length)."""
    poly = p.poly if isinstance(p, ShiftedPoly) else p
    lam = Partition(lam)
    if len(lam) > poly.nvars:
        raise ValueError(f"{lam} has more parts than {poly.nvars} variables")
    return poly.evaluate(eval_point(lam, poly.nvars, base))


def _primed_P(nu, n, theta=None) -> XPolynomial:
    t = None if theta is None else q_power(theta)
    return macdonald_P_xpoly(nu, n, theta).scale_vars(primed_scaling(n, t))


def _subpartitions(mu, n):
    mu = Partition(mu)
    return [nu for nu in enumerate_partitions(mu.size, n) if mu.contains(nu)]


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _interpolate(mu: Partition, n: int) -> XPolynomial:
    lower = [nu for nu in _subpartitions(mu, n) if nu != mu]
    top = _primed_P(mu, n)
    if not lower:
        poly = top
    else:
        basis = [_primed_P(nu, n) for nu in lower]
        points = [eval_point(lam, n) for lam in lower]
        matrix = [[b.evaluate(pt) for b in basis] for pt in points]
        rhs = [-top.evaluate(pt) for pt in points]
        coeffs = solve(matrix, rhs)
        poly = top
        for c, b in zip(coeffs, basis):
            if c:
                poly = poly + b.scale(c)
    _assert_interpolation(mu, n, poly)
    return poly


def _assert_interpolation(mu, n, poly):
    h = hook_H(mu)
    for lam in enumerate_partitions(mu.size, n):
        v = poly.evaluate(eval_point(lam, n))
        expected = h if lam == mu else ZERO
        if v != expected:
            raise InterpolationError(f"P*_{mu.text()} has value {v} at q^{lam.text()}, expected {expected}")


def pstar_interpolate(mu, n: int) -> ShiftedPoly:
    """P*_mu from P_mu(x') + sum c_nu P_nu(x'), nu strictly inside mu.

    The c_nu are fixed by vanishing at q^lam for lam strictly inside mu;
    vanishing on the rest of the grid |lam| <= |mu| and the normalization
    P*_mu(q^mu) = H(mu) are then checked, raising InterpolationError.
    """
    mu = Partition(mu)
    if len(mu) > n:
        raise ValueError(f"{mu} has more than {n} parts")
    return ShiftedPoly(n, _interpolate(mu, n))


@lru_cache(maxsize=None)
def _pstar_theta(mu: Partition, n: int, theta: int) -> XPolynomial:
    return _interpolate(mu, n).map_coeffs(lambda c: specialize_theta(c, theta))


def pstar(mu, n: int, theta=None) -> ShiftedPoly:
    """Cached P*_mu; with ``theta`` the coefficients have t = q^theta."""
    mu = Partition(mu)
    if len(mu) > n:
        raise ValueError(f"{mu} has more than {n} parts")
    if theta is None:
        return ShiftedPoly(n, _interpolate(mu, n))
    return ShiftedPoly(n, _pstar_theta(mu, n, int(theta)))


def pstar_combinatorial(mu, n: int) -> ShiftedPoly:
    """sum_T psi_T prod_s t^(1-T(s)) (x_T(s) - q^a'(s) t^(-l'(s)))."""
    mu = Partition(mu)
    xs = [XPolynomial.var(n, i) for i in range(n)]
    total = XPolynomial(n)
    for tab in enumerate_reverse_tableaux(mu, n):
        term = XPolynomial.constant(n, psi_of_tableau(tab, n))
        for (i, j), v in tab.items():
            factor = (xs[v - 1] - qt_monomial(j - 1, 1 - i)).scale(qt_monomial(0, 1 - v))
            term = term * factor
        total = total + term
    return ShiftedPoly(n, total)


def pstar_recursion(mu, n: int) -> ShiftedPoly:
    """q^|mu-| prod_i (x_i t^(1-i) - t^(1-n)) P*_(mu-)(x/q), mu- = mu - (1^n).

    Recurses while the last part is positive; the base case uses
    interpolation.
    """
    mu = Partition(mu)
    if len(mu) != n:
        raise ValueError("the recursion needs exactly n nonzero parts")
    minus = Partition([p - 1 for p in mu])
    if len(minus) == n:
        base = pstar_recursion(minus, n).poly
    else:
        base = pstar(minus, n).poly
    qinv = q_power(-1)
    base = base.scale_vars([qinv] * n)
    prod = XPolynomial.constant(n, q_power(minus.size))
    for i in range(1, n + 1):
        prod = prod * (XPolynomial.var(n, i - 1).scale(qt_monomial(0, 1 - i)) - qt_monomial(0, 1 - n))
    return ShiftedPoly(n, prod * base)


# ---------------------------------------------------------------------------
# expansions and branching
# ---------------------------------------------------------------------------


def expand_in_pstar(g: XPolynomial, theta=None):
    """Coefficients c_nu with g = sum c_nu P*_nu (in g.nvars variables).

    Solved by evaluating at q^nu in order of increasing size, using the
    vanishing of P*_kappa at q^nu unless kappa is inside nu.  The residual
    is checked to be zero.
    """
    n = g.nvars
    deg = max(g.total_degree(), 0)
    grid = enumerate_partitions(deg, n)
    coeffs = {}
    for nu in grid:
        pt = eval_point(nu, n)
        val = g.evaluate(pt)
        for kappa, c in coeffs.items():
            if nu.contains(kappa):
                val = val - c * pstar(kappa, n, theta).poly.evaluate(pt)
        if val:
            h = hook_H(nu)
            coeffs[nu] = val / (specialize_theta(h, theta) if theta is not None else h)
    residual = g
    for nu, c in coeffs.items():
        residual = residual - pstar(nu, n, theta).poly.scale(c)
    if residual:
        raise ExactDivisionError("expansion in shifted polynomials leaves a residual", residual)
    return coeffs


def generalized_qfactorial(mu, nu, d=None):
    """<d>_(mu/nu) = prod over squares of mu/nu of (d - q^a'(s) t^(-l'(s))).

    Without ``d`` the result is a polynomial in one variable d.
    """
    mu, nu = Partition(mu), Partition(nu)
    if not mu.contains(nu):
        raise ValueError(f"{nu} is not contained in {mu}")
    if d is None:
        d = XPolynomial.var(1, 0)
    val = XPolynomial.constant(1, ONE) if isinstance(d, XPolynomial) else ONE
    for (i, j) in mu.squares():
        if j > nu.part(i):
            val = val * (d - qt_monomial(j - 1, 1 - i))
    return val


def pstar_branch(mu, nu) -> XPolynomial:
    """Closed form psi_(mu,nu) t^(-|nu|) <d>_(mu/nu), zero off interlacing pairs."""
    mu, nu = Partition(mu), Partition(nu)
    if not interlaces(nu, mu):
        return XPolynomial(1)
    return generalized_qfactorial(mu, nu).scale(extract_psi(mu, nu) * qt_monomial(0, -nu.size))


@lru_cache(maxsize=None)
def _branch_extract(mu: Partition, n: int):
    p = pstar(mu, n).poly
    out = {}
    for k, sl in p.collect(0).items():
        for nu, c in expand_in_pstar(sl.drop_vars(range(1, n))).items():
            e = XPolynomial.monomial((k,), c)
            out[nu] = out[nu] + e if nu in out else e
    return out


def pstar_branch_extract(mu, n=None):
    """{nu: f_(mu,nu)(d)} from P*_mu(d, x_2, .., x_n) = sum f(d) P*_nu(x_2, ..)."""
    mu = Partition(mu)
    n = len(mu) + 1 if n is None else n
    return dict(_branch_extract(mu, n))


def verify_branching(mu, n=None):
    """Extracted f_(mu,nu)(d) against the closed form, for every nu with |nu| <= |mu|."""
    mu = Partition(mu)
    n = len(mu) + 1 if n is None else n
    timer = Timer()
    extracted = pstar_branch_extract(mu, n)
    witness = None
    for nu in enumerate_partitions(mu.size, n - 1):
        got = extracted.get(nu, XPolynomial(1))
        w = compare_polys(got, pstar_branch(mu, nu))
        if w is not None:
            witness = dict(w, nu=nu.text())
            break
    return make_report("branching", {"mu": mu.text(), "n": n}, witness, timer)


def verify_equivalence(mu, n: int):
    """Interpolation, tableau sum and (when l(mu) = n) the recursion agree."""
    mu = Partition(mu)
    timer = Timer()
    ref = pstar_interpolate(mu, n).poly
    witness = None
    routes = [("combinatorial", lambda: pstar_combinatorial(mu, n).poly)]
    if len(mu) == n:
        routes.append(("recursion", lambda: pstar_recursion(mu, n).poly))
    for name, build in routes:
        w = compare_polys(build(), ref)
        if w is not None:
            witness = dict(w, route=name)
            break
    return make_report("equivalence", {"mu": mu.text(), "n": n}, witness, timer)


def verify_vanishing(mu, n: int, theta=None, extra: int = 2):
    """P*_mu(q^lam) is H(mu) at lam = mu and 0 at lam not containing mu."""
    mu = Partition(mu)
    timer = Timer()
    p = pstar(mu, n, theta)
    h = specialize_theta(hook_H(mu), theta)
    witness = None
    for lam in enumerate_partitions(mu.size + extra, n):
        value = pstar_eval(p, lam)
        if lam == mu:
            witness = compare_values(value, h, f"lambda={lam.text()}")
        elif not lam.contains(mu):
            witness = compare_values(value, ZERO, f"lambda={lam.text()}")
        if witness is not None:
            break
    inst = {"mu": mu.text(), "n": n, "theta": "symbolic" if theta is None else theta}
    return make_report("vanishing", inst, witness, timer)


# ---------------------------------------------------------------------------
# integral representation
# ---------------------------------------------------------------------------


def shifted_integral_side(mu, n: int, theta: int) -> XPolynomial:
    """(1/V*theta(x)) times the integral of P*_mu(y) d beta*(y|x) over y <* x.

    The measure d_q y* carries the constant prod_i t^(n-1-i) from the
    rescaling of each y_i.
    """
    mu = Partition(mu)
    ring = 2 * n - 1
    t = q_power(theta)
    py = pstar(mu, n - 1, theta).poly.embed(ring, list(range(n, ring)))
    density, _ = beta_density(n, theta, starred=True)
    jacobian = t ** ((n - 1) * (n - 2) // 2)
    integral = interlacing_integral(py * density, n, shifted_upper=True).scale(jacobian)
    denom, _ = vandermonde_theta(n, theta, starred=True)
    return integral.exact_divide(denom)


def verify_theorem_II(mu, n: int, theta: int):
    mu = Partition(mu)
    timer = Timer()
    inst = {"mu": mu.text(), "n": n, "theta": theta}
    if len(mu) >= n:
        raise ValueError("the integral representation needs fewer parts than variables")
    try:
        lhs = shifted_integral_side(mu, n, theta)
    except ExactDivisionError:
        return make_report("theorem2", inst, {"reason": "inexact division"}, timer)
    coeff = q_power(theta * mu.size) * capital_C(mu, n, theta)
    rhs = pstar(mu, n, theta).poly.scale(coeff)
    return make_report("theorem2", inst, compare_polys(lhs, rhs), timer)


# ---------------------------------------------------------------------------
# duality
# ---------------------------------------------------------------------------


def omega_star_check(mu, lam):
    """P*_mu(q^lam'; q, t) == (-t)^|mu| b_mu'(t, q) P*_mu'(t^(-lam); 1/t, 1/q)."""
    mu, lam = Partition(mu), Partition(lam)
    timer = Timer()
    mu_c, lam_c = conjugate(mu), conjugate(lam)
    n_left = max(len(mu), len(lam_c), 1)
    lhs = pstar_eval(pstar(mu, n_left), lam_c)
    n_right = max(len(mu_c), len(lam), 1)
    # P*_mu'(x; q', t') at x_i = q'^lam_i, then q' = 1/t, t' = 1/q
    inner = pstar_eval(pstar(mu_c, n_right), lam)
    rhs_value = substitute_params(inner, q="1/t", t="1/q")
    const = qt_monomial(0, 1, -1) ** mu.size * b_lambda(mu_c, swap=True)
    rhs = const * rhs_value
    inst = {"mu": mu.text(), "lambda": lam.text()}
    return make_report("duality", inst, compare_values(lhs, rhs, f"lambda={lam.text()}"), timer)


def powersum_duality_check(k: int, lam):
    """1/(q^k-1) sum_i t^(k(1-i)) (q^(k lam_i) - 1)
    == 1/(t^(-k)-1) sum_j q^(k(j-1)) (t^(-k lam'_j) - 1)."""
    lam = Partition(lam)
    timer = Timer()
    lhs = ZERO
    for i, part in enumerate(lam, 1):
        lhs = lhs + qt_monomial(0, k * (1 - i)) * (q_power(k * part) - 1)
    lhs = lhs / (q_power(k) - 1)
    rhs = ZERO
    for j, part in enumerate(conjugate(lam), 1):
        rhs = rhs + q_power(k * (j - 1)) * (qt_monomial(0, -k * part) - 1)
    rhs = rhs / (qt_monomial(0, -k) - 1)
    inst = {"k": k, "lambda": lam.text()}
    return make_report("powersum-duality", inst, compare_values(lhs, rhs), timer)


def shifted_power_sum(k: int, n: int) -> ShiftedPoly:
    """p*_k = sum_i (x_i^k - 1) t^(k(1-i))."""
    total = XPolynomial(n)
    for i in range(1, n + 1):
        xi = XPolynomial.var(n, i - 1)
        total = total + (xi ** k - 1).scale(qt_monomial(0, k * (1 - i)))
    return ShiftedPoly(n, total)
