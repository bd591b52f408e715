"""q-calculus: Pochhammer symbols, q-integrals, q-beta values and beta densities.

Densities carry factors ``(q y / x)_k`` that are not polynomial in x.  They
are always returned multiplied by a clearing monomial in the x variables;
callers divide both sides of an identity by the same monomial, so it
cancels and never has to be stored with negative exponents.
"""
from __future__ import annotations

from functools import lru_cache

from .algebra import ONE, Q, CoeffField, XPolynomial, q_power
from .combinatorics import Partition

__all__ = [
    "QFactors",
    "pochhammer",
    "q_falling",
    "q_number",
    "q_integral",
    "q_beta_int",
    "capital_C",
    "vandermonde",
    "vandermonde_theta",
    "beta_density",
    "interlacing_integral",
    "interlacing_ring",
]


def _times_qpower(a, k):
    if k == 0:
        return a
    return a * q_power(k)


def pochhammer(a, k: int):
    """(a)_k = (1 - a)(1 - q a)...(1 - q^(k-1) a)."""
    if k < 0:
        raise ValueError("pochhammer length must be nonnegative")
    result = None
    for i in range(k):
        f = 1 - _times_qpower(a, i) if not isinstance(a, XPolynomial) else XPolynomial.constant(a.nvars, ONE) - a.scale(q_power(i))
        result = f if result is None else result * f
    if result is None:
        return XPolynomial.constant(a.nvars, ONE) if isinstance(a, XPolynomial) else ONE
    return result


def q_falling(a, r: int):
    """<a>_r = (a - 1)(a - q)...(a - q^(r-1))."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    result = None
    for i in range(r):
        f = a - q_power(i)
        result = f if result is None else result * f
    if result is None:
        return XPolynomial.constant(a.nvars, ONE) if isinstance(a, XPolynomial) else ONE
    return result


@lru_cache(maxsize=None)
def q_number(r: int) -> CoeffField:
    """[r] = (1 - q^r)/(1 - q)."""
    return (1 - q_power(r)) / (1 - Q)


@lru_cache(maxsize=None)
def _qpoch_q(k: int) -> CoeffField:
    """(q)_k as a polynomial in q."""
    return pochhammer(Q, k)


class QFactors:
    """Cached scalar factors for t = q^theta, theta a positive integer."""

    def __init__(self, theta: int):
        if int(theta) != theta or theta < 1:
            raise ValueError(f"theta must be a positive integer, got {theta}")
        self.theta = int(theta)
        self.t = q_power(self.theta)

    @staticmethod
    def q_poch(k: int) -> CoeffField:
        return _qpoch_q(k)

    def beta(self, a: int, b: int) -> CoeffField:
        return q_beta_int(a, b)


def q_beta_int(a: int, b: int) -> CoeffField:
    """B_q(a, b) = (1 - q)(q)_(a-1)(q)_(b-1)/(q)_(a+b-1) for positive integers."""
    if a < 1 or b < 1:
        raise ValueError("q-beta needs positive integer arguments")
    return (1 - Q) * _qpoch_q(a - 1) * _qpoch_q(b - 1) / _qpoch_q(a + b - 1)


def capital_C(mu, n: int, theta: int) -> CoeffField:
    """prod_{i=1}^{n-1} B_q(mu_i + (n - i) theta, theta)."""
    mu = Partition(mu)
    if len(mu) >= n:
        raise ValueError(f"need fewer than n={n} parts, got {mu}")
    val = ONE
    for i in range(1, n):
        val = val * q_beta_int(mu.part(i) + (n - i) * theta, theta)
    return val


def q_integral(f: XPolynomial, var: int, lower, upper) -> XPolynomial:
    """Jackson integral of f over ``var`` from ``lower`` to ``upper``.

    Monomial rule: the integral of y^r from b to a is (a^(r+1) - b^(r+1))/[r+1].
    Limits are polynomials in the same ring that do not involve ``var``.
    The result no longer involves ``var``.
    """
    n = f.nvars
    if not isinstance(lower, XPolynomial):
        lower = XPolynomial.constant(n, lower)
    if not isinstance(upper, XPolynomial):
        upper = XPolynomial.constant(n, upper)
    if var in lower.used_vars() or var in upper.used_vars():
        raise ValueError("integration limits must not involve the integration variable")
    up_pows = [XPolynomial.constant(n, ONE)]
    lo_pows = [XPolynomial.constant(n, ONE)]
    result = XPolynomial(n)
    for r, rest in sorted(f.collect(var).items()):
        while len(up_pows) <= r + 1:
            up_pows.append(up_pows[-1] * upper)
            lo_pows.append(lo_pows[-1] * lower)
        antider = (up_pows[r + 1] - lo_pows[r + 1]).scale(1 / q_number(r + 1))
        result = result + rest * antider
    return result


def interlacing_ring(n: int) -> int:
    """Number of variables in the joint ring: x_1..x_n then y_1..y_(n-1)."""
    return 2 * n - 1


def interlacing_integral(integrand: XPolynomial, n: int, shifted_upper: bool = False) -> XPolynomial:
    """Integrate over y_i from x_(i+1) to x_i (or to q x_i), i = n-1 down to 1.

    ``integrand`` lives in the joint ring of :func:`interlacing_ring`; the
    result is returned as a polynomial in x_1..x_n.
    """
    nv = interlacing_ring(n)
    if integrand.nvars != nv:
        raise ValueError(f"integrand must have {nv} variables")
    cur = integrand
    for i in range(n - 1, 0, -1):
        upper = XPolynomial.var(nv, i - 1)
        if shifted_upper:
            upper = upper.scale(Q)
        lower = XPolynomial.var(nv, i)
        cur = q_integral(cur, n + i - 1, lower, upper)
    return cur.drop_vars(range(n))


def vandermonde(nvars: int, indices=None, ring=None) -> XPolynomial:
    """prod_{i<j} (v_i - v_j) over the listed variable indices."""
    ring = ring or nvars
    indices = list(range(nvars)) if indices is None else list(indices)
    result = XPolynomial.constant(ring, ONE)
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            result = result * (XPolynomial.var(ring, indices[a]) - XPolynomial.var(ring, indices[b]))
    return result


def _star_factors(n, ring, t, with_y):
    """Scaling x_i -> x_i t^(n-i) and y_i -> y_i t^(n-1-i) in the joint ring."""
    f = [None] * ring
    for i in range(1, n + 1):
        f[i - 1] = t ** (n - i) if n - i else None
    if with_y:
        for i in range(1, n):
            f[n + i - 1] = t ** (n - 1 - i) if n - 1 - i else None
    return f


def vandermonde_theta(n: int, theta: int, starred: bool = False, ring=None):
    """V^theta(x) (or its starred version) with t = q^theta, cleared.

    Returns ``(poly, clearing_exps)`` where ``poly`` equals the true value
    times the monomial x^clearing_exps.  The same clearing monomial is used
    by :func:`beta_density`.
    """
    ring = ring or n
    t = q_power(theta)
    xs = [XPolynomial.var(ring, i) for i in range(n)]
    poly = vandermonde(n, range(n), ring)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(1, theta):
                # x_j (1 - q^k x_i / x_j)
                poly = poly * (xs[j] - xs[i].scale(q_power(k)))
    clearing = tuple((n - 1) * (theta - 1) for _ in range(n))
    if starred:
        poly = _starred_cleared(poly, n, ring, t, clearing, with_y=False)
    return poly, clearing + (0,) * (ring - n)


def _starred_cleared(poly, n, ring, t, clearing, with_y):
    # P(x*) / prod (x*_j)^c_j times prod x_j^c_j: divide by the t-constant
    poly = poly.scale_vars(_star_factors(n, ring, t, with_y))
    const = ONE
    for j in range(1, n + 1):
        const = const * t ** ((n - j) * clearing[j - 1])
    return poly.scale(1 / const)


def beta_density(n: int, theta: int, starred: bool = False):
    """Beta density V(y) prod_{i,j} (q y_i / x_j)_(theta-1), cleared.

    Lives in the joint ring (x_1..x_n, y_1..y_(n-1)).  Returns
    ``(poly, clearing_exps)`` with the same clearing monomial as
    :func:`vandermonde_theta`.  With ``starred`` the variables are replaced
    by x*_i = x_i t^(n-i), y*_i = y_i t^(n-1-i); the Jacobian of the
    measure d_q y* is not part of the density.
    """
    ring = interlacing_ring(n)
    t = q_power(theta)
    xs = [XPolynomial.var(ring, i) for i in range(n)]
    ys = [XPolynomial.var(ring, n + i) for i in range(n - 1)]
    poly = vandermonde(n - 1, range(n, ring), ring)
    for i in range(n - 1):
        for j in range(n):
            for k in range(1, theta):
                poly = poly * (xs[j] - ys[i].scale(q_power(k)))
    clearing = tuple((n - 1) * (theta - 1) for _ in range(n))
    if starred:
        poly = _starred_cleared(poly, n, ring, t, clearing, with_y=True)
    return poly, clearing + (0,) * (ring - n)
