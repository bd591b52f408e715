"""Shifted Jack polynomials P*_mu(x; theta), the q -> 1 degeneration.

theta is either an exact rational (``Fraction``) or the symbol itself, in
which case coefficients live in :class:`ThetaField`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import UnivariateRational, XPolynomial, limit_at_one, substitute_params
from .combinatorics import Partition, enumerate_partitions, enumerate_reverse_tableaux, interlaces, strips_below
from .macdonald import extract_psi
from .report import Timer, compare_polys, compare_values, make_report
from .shifted import pstar, pstar_eval

__all__ = [
    "ThetaField",
    "SYMBOLIC",
    "parse_theta",
    "jack_psi",
    "jack_psi_symbolic",
    "jack_falling",
    "jack_pstar",
    "JackShiftedPoly",
    "jack_hook_H",
    "jack_eval",
    "falling",
    "finite_sum",
    "classical_beta",
    "jack_capital_C",
    "jack_vandermonde",
    "jack_beta_density",
    "coherence_lhs",
    "verify_coherence",
    "shifted_schur_tableaux",
    "jack_limit_check",
]

SYMBOLIC = "symbolic"


def ThetaField(num=0, den=1):
    """Element of Q(theta): a reduced ratio with monic denominator."""
    return UnivariateRational(num, den, var="theta")


THETA = UnivariateRational([0, 1], 1, var="theta")


def parse_theta(text):
    """``"2"``, ``"1/2"`` -> Fraction; ``"symbolic"`` -> SYMBOLIC."""
    if isinstance(text, (int, Fraction)):
        val = Fraction(text)
    elif str(text).strip().lower() == SYMBOLIC:
        return SYMBOLIC
    else:
        val = Fraction(str(text).strip())
    if val <= 0:
        raise ValueError(f"theta must be positive, got {val}")
    return val


def _theta_value(theta):
    return THETA if theta == SYMBOLIC else Fraction(theta)


def _one(theta):
    return ThetaField(1) if theta == SYMBOLIC else Fraction(1)


# ---------------------------------------------------------------------------
# branching coefficients
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _jack_psi(mu: Partition, nu: Partition, theta: Fraction) -> Fraction:
    psi = extract_psi(mu, nu)
    if not psi:
        return Fraction(0)
    p, r = theta.numerator, theta.denominator
    return limit_at_one(substitute_params(psi, q=f"u^{r}", t=f"u^{p}"))


def jack_psi(mu, nu, theta) -> Fraction:
    """lim_{u -> 1} psi_(mu,nu)(u^r, u^p) for theta = p/r."""
    if theta == SYMBOLIC:
        return jack_psi_symbolic(mu, nu)
    return _jack_psi(Partition(mu), Partition(nu), Fraction(theta))


def _nullspace_vector(rows, ncols):
    """One nonzero solution of rows @ v == 0 over Q, or None."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    v = [Fraction(0)] * ncols
    v[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -m[i][free[0]]
    return v


@lru_cache(maxsize=None)
def _jack_psi_symbolic(mu: Partition, nu: Partition):
    if not interlaces(nu, mu):
        return ThetaField(0)
    sample = {}

    def value(k):
        if k not in sample:
            sample[k] = _jack_psi(mu, nu, Fraction(k))
        return sample[k]

    # rational reconstruction with numerator and denominator degree D,
    # raising D until a fit reproduces three extra sample points
    for deg in range(0, 4 * max(mu.size, 1) + 4):
        pts = range(1, 2 * deg + 3)
        rows = []
        for k in pts:
            x, v = Fraction(k), value(k)
            rows.append([x ** i for i in range(deg + 1)] + [-v * x ** i for i in range(deg + 1)])
        vec = _nullspace_vector(rows, 2 * deg + 2)
        if vec is None:
            continue
        num, den = vec[: deg + 1], vec[deg + 1:]
        if not any(den):
            continue
        cand = ThetaField(num, den)
        extra = range(2 * deg + 3, 2 * deg + 6)
        try:
            if all(cand(Fraction(k)) == value(k) for k in extra):
                return cand
        except ZeroDivisionError:
            continue
    raise ArithmeticError(f"could not reconstruct psi for {mu}, {nu}")


def jack_psi_symbolic(mu, nu):
    """psi_(mu,nu)(theta) as a rational function, rebuilt from exact samples."""
    return _jack_psi_symbolic(Partition(mu), Partition(nu))


# ---------------------------------------------------------------------------
# the polynomials
# ---------------------------------------------------------------------------


def jack_falling(z, mu, nu, theta):
    """<z>_(mu/nu) = prod over squares of (z - a'(s) + theta l'(s))."""
    mu, nu = Partition(mu), Partition(nu)
    th = _theta_value(theta)
    val = None
    for (i, j) in mu.squares():
        if j > nu.part(i):
            f = z - (j - 1) + th * (i - 1)
            val = f if val is None else val * f
    if val is None:
        return XPolynomial.constant(z.nvars, _one(theta)) if isinstance(z, XPolynomial) else _one(theta)
    return val


class JackShiftedPoly:
    """Polynomial meant to be symmetric in x_i - theta i."""

    __slots__ = ("nvars", "poly", "theta")

    def __init__(self, nvars, poly, theta):
        self.nvars, self.poly, self.theta = nvars, poly, theta

    def swap_image(self, i: int) -> XPolynomial:
        """Image under x_i -> x_(i+1) - theta, x_(i+1) -> x_i + theta (0-based).

        This swaps x_i - theta*i with x_(i+1) - theta*(i+1).
        """
        th = _theta_value(self.theta)
        n = self.nvars
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        g = self.poly.permute(perm)
        g = g.compose(i, XPolynomial.var(n, i, _one(self.theta)) + th)
        g = g.compose(i + 1, XPolynomial.var(n, i + 1, _one(self.theta)) - th)
        return g

    def is_shifted_symmetric(self) -> bool:
        return all(self.swap_image(i) == self.poly for i in range(self.nvars - 1))

    def evaluate(self, point):
        return self.poly.evaluate([Fraction(p) for p in point]) if self.theta != SYMBOLIC else self.poly.evaluate(
            [ThetaField(p) for p in point])

    def degree(self) -> int:
        return self.poly.total_degree()

    def __eq__(self, other):
        return isinstance(other, JackShiftedPoly) and self.nvars == other.nvars and self.poly == other.poly

    def __repr__(self):
        return f"JackShiftedPoly({self.nvars}, {self.poly.pretty()!r})"


def _key(theta):
    return SYMBOLIC if theta == SYMBOLIC else Fraction(theta)


@lru_cache(maxsize=None)
def _jack_pstar(mu: Partition, n: int, theta) -> XPolynomial:
    one = _one(theta)
    if n == 0:
        return XPolynomial.constant(0, one) if not mu else XPolynomial(0)
    if len(mu) > n:
        return XPolynomial(n)
    x1 = XPolynomial.var(n, 0, one)
    total = XPolynomial(n)
    for nu in strips_below(mu):
        if len(nu) > n - 1:
            continue
        psi = jack_psi(mu, nu, theta)
        if not psi:
            continue
        rest = _jack_pstar(nu, n - 1, theta).embed(n, list(range(1, n)))
        total = total + jack_falling(x1, mu, nu, theta) * rest.scale(psi)
    return total


def jack_pstar(mu, n: int, theta) -> JackShiftedPoly:
    """P*_mu(x_1..x_n; theta) by the branching rule over interlacing nu."""
    mu = Partition(mu)
    if len(mu) > n:
        raise ValueError(f"{mu} has more than {n} parts")
    theta = _key(theta)
    return JackShiftedPoly(n, _jack_pstar(mu, n, theta), theta)


def jack_eval(p: JackShiftedPoly, lam):
    lam = Partition(lam)
    return p.evaluate([lam.part(i) for i in range(1, p.nvars + 1)])


def jack_hook_H(mu, theta):
    """prod_s (a(s) + theta l(s) + 1)."""
    mu = Partition(mu)
    th = _theta_value(_key(theta))
    val = _one(_key(theta))
    for s in mu.squares():
        val = val * (th * mu.leg(s) + (mu.arm(s) + 1))
    return val


def shifted_schur_tableaux(mu, n: int) -> XPolynomial:
    """sum over reverse tableaux T of prod_s (x_T(s) - (j - i))."""
    mu = Partition(mu)
    one = Fraction(1)
    xs = [XPolynomial.var(n, i, one) for i in range(n)]
    total = XPolynomial(n)
    for tab in enumerate_reverse_tableaux(mu, n):
        term = XPolynomial.constant(n, one)
        for (i, j), v in tab.items():
            term = term * (xs[v - 1] - (j - i))
        total = total + term
    return total


# ---------------------------------------------------------------------------
# finite-difference calculus
# ---------------------------------------------------------------------------


def falling(z, r: int):
    """z (z - 1) ... (z - r + 1)."""
    val = None
    for k in range(r):
        f = z - k
        val = f if val is None else val * f
    if val is None:
        return XPolynomial.constant(z.nvars, Fraction(1)) if isinstance(z, XPolynomial) else 1
    return val


@lru_cache(maxsize=None)
def _stirling2(r: int, k: int) -> int:
    if r == k:
        return 1
    if k == 0 or k > r:
        return 0
    return k * _stirling2(r - 1, k) + _stirling2(r - 1, k - 1)


def finite_sum(f: XPolynomial, var: int, lower, upper) -> XPolynomial:
    """sum_{y = lower}^{upper} f, extended to arbitrary polynomial endpoints.

    Each power y^r is rewritten in falling factorials with Stirling numbers,
    and sum_{y=b}^{a} <y>_k = (<a+1>_(k+1) - <b>_(k+1)) / (k+1).
    """
    n = f.nvars
    one = next(iter(f.terms.values())) if f.terms else Fraction(1)
    one = one / one if f.terms else one
    if not isinstance(lower, XPolynomial):
        lower = XPolynomial.constant(n, one * lower)
    if not isinstance(upper, XPolynomial):
        upper = XPolynomial.constant(n, one * upper)
    if var in lower.used_vars() or var in upper.used_vars():
        raise ValueError("summation limits must not involve the summation variable")
    top = upper + one
    cache = {}

    def antidiff(k):
        if k not in cache:
            cache[k] = (falling(top, k + 1) - falling(lower, k + 1)).scale(one / (k + 1))
        return cache[k]

    result = XPolynomial(n)
    for r, rest in f.collect(var).items():
        acc = XPolynomial(n)
        for k in range(r + 1):
            s = _stirling2(r, k)
            if s:
                acc = acc + antidiff(k).scale(one * s)
        result = result + rest * acc
    return result


# ---------------------------------------------------------------------------
# coherence
# ---------------------------------------------------------------------------


def classical_beta(a: int, b: int) -> Fraction:
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


def jack_capital_C(mu, n: int, theta: int) -> Fraction:
    mu = Partition(mu)
    val = Fraction(1)
    for i in range(1, n):
        val *= classical_beta(mu.part(i) + (n - i) * theta, theta)
    return val


def jack_vandermonde(n: int, theta: int, ring=None) -> XPolynomial:
    """prod_{i<j} (x_i - x_j + theta(j-i)) prod_{i != j} <x_i - x_j + theta(j-i) + theta - 1>_(theta-1)."""
    ring = ring or n
    one = Fraction(1)
    xs = [XPolynomial.var(ring, i, one) for i in range(n)]
    val = XPolynomial.constant(ring, one)
    for i in range(n):
        for j in range(n):
            if i < j:
                val = val * (xs[i] - xs[j] + theta * (j - i))
            if i != j:
                val = val * falling(xs[i] - xs[j] + (theta * (j - i) + theta - 1), theta - 1)
    return val


def jack_beta_density(n: int, theta: int) -> XPolynomial:
    """prod_{i<j} (y_i - y_j + theta(j-i)) prod_{i,j} <y_i - x_j + theta(j-i) - 1>_(theta-1).

    Joint ring: x_1..x_n then y_1..y_(n-1).
    """
    ring = 2 * n - 1
    one = Fraction(1)
    xs = [XPolynomial.var(ring, i, one) for i in range(n)]
    ys = [XPolynomial.var(ring, n + i, one) for i in range(n - 1)]
    val = XPolynomial.constant(ring, one)
    for i in range(n - 1):
        for j in range(n - 1):
            if i < j:
                val = val * (ys[i] - ys[j] + theta * (j - i))
        for j in range(n):
            val = val * falling(ys[i] - xs[j] + (theta * (j - i) - 1), theta - 1)
    return val


def coherence_lhs(mu, n: int, theta: int) -> XPolynomial:
    """(1/V*theta(x)) sum_{y < x} P*_mu(y; theta) beta*(y, x; theta)."""
    mu = Partition(mu)
    ring = 2 * n - 1
    py = jack_pstar(mu, n - 1, theta).poly.embed(ring, list(range(n, ring)))
    cur = py * jack_beta_density(n, theta)
    one = Fraction(1)
    for i in range(n - 1, 0, -1):
        cur = finite_sum(cur, n + i - 1, XPolynomial.var(ring, i, one), XPolynomial.var(ring, i - 1, one))
    return cur.drop_vars(range(n)).exact_divide(jack_vandermonde(n, theta))


def verify_coherence(mu, n: int, theta: int):
    mu = Partition(mu)
    timer = Timer()
    if int(theta) != theta or theta < 1:
        raise ValueError("coherence is checked for positive integer theta only")
    theta = int(theta)
    inst = {"mu": mu.text(), "n": n, "theta": theta}
    if len(mu) >= n:
        raise ValueError("coherence needs fewer parts than variables")
    from .algebra import ExactDivisionError

    try:
        lhs = coherence_lhs(mu, n, theta)
    except ExactDivisionError:
        return make_report("coherence", inst, {"reason": "inexact division"}, timer)
    rhs = jack_pstar(mu, n, theta).poly.scale(jack_capital_C(mu, n, theta))
    return make_report("coherence", inst, compare_polys(lhs, rhs), timer)


def jack_limit_check(mu, lam, theta: int):
    """lim_{q->1} (q-1)^(-|mu|) P*_mu(q^lam; q, q^theta) == P*_mu(lam; theta)."""
    mu, lam = Partition(mu), Partition(lam)
    timer = Timer()
    n = max(len(mu), len(lam), 1)
    value = pstar_eval(pstar(mu, n), lam)
    u = substitute_params(value, q="u", t=f"u^{int(theta)}")
    u = u / (UnivariateRational([-1, 1]) ** mu.size)
    lhs = limit_at_one(u)
    rhs = jack_eval(jack_pstar(mu, n, theta), lam)
    inst = {"mu": mu.text(), "lambda": lam.text(), "theta": int(theta)}
    return make_report("jack-limit", inst, compare_values(lhs, rhs), timer)
