"""Acceptance criteria 1-11, each checked at exact equality.

Every test prints one line "criterion N: PASS|FAIL ..." to the terminal.
"""
import time
from fractions import Fraction
from itertools import product

import pytest

from shiftmac.algebra import ONE, Q, T, CoeffField, XPolynomial, q_power
from shiftmac.combinatorics import Partition, conjugate, enumerate_partitions, interlaces, partitions_of
from shiftmac.jack import (
    jack_eval,
    jack_hook_H,
    jack_limit_check,
    jack_pstar,
    jack_psi,
    shifted_schur_tableaux,
    verify_coherence,
)
from shiftmac.macdonald import (
    macdonald_P,
    macdonald_P_xpoly,
    operator_lemma_checks,
    macdonald_integral_side,
    verify_eigen_relation,
    verify_theorem_I,
)
from shiftmac.qcalc import (
    beta_density,
    capital_C,
    interlacing_integral,
    pochhammer,
    q_integral,
    vandermonde,
    vandermonde_theta,
)
from shiftmac.shifted import (
    eval_point,
    expand_in_pstar,
    omega_star_check,
    powersum_duality_check,
    primed_scaling,
    pstar,
    verify_branching,
    verify_equivalence,
    verify_theorem_II,
    verify_vanishing,
)
from shiftmac.symmetric import SymPoly, monomial_symmetric


@pytest.fixture
def announce(capsys):
    def emit(number, ok, text, elapsed):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s) {text}")
    return emit


def _check(announce, number, text, failures, start):
    elapsed = time.perf_counter() - start
    ok = not failures
    announce(number, ok, text if ok else f"{text}; first failure: {failures[0]}", elapsed)
    assert ok, failures[:5]
    return elapsed


def test_criterion_01_construction_equivalence(announce):
    start = time.perf_counter()
    failures = []
    for n in range(1, 5):
        for mu in enumerate_partitions(4, n):
            r = verify_equivalence(mu, n)
            if not r.passed:
                failures.append((mu, n, r.witness))
    elapsed = _check(announce, 1, "interpolation = tableau sum = recursion, |mu| <= 4, n <= 4", failures, start)
    assert elapsed < 300


def test_criterion_02_defining_conditions(announce):
    start = time.perf_counter()
    failures = []
    for n in range(1, 5):
        for mu in enumerate_partitions(4, n):
            r = verify_vanishing(mu, n, None, extra=2)
            if not r.passed:
                failures.append((mu, n, r.witness))
    _check(announce, 2, "P*_mu(q^lam) = H(mu) delta, and zero off mu-containing lam to |mu|+2", failures, start)


def test_criterion_03_highest_term(announce):
    start = time.perf_counter()
    failures = []
    for n in range(1, 5):
        for mu in enumerate_partitions(4, n):
            top = pstar(mu, n).poly.homogeneous_part(mu.size)
            if top != macdonald_P_xpoly(mu, n).scale_vars(primed_scaling(n)):
                failures.append((mu, n))
    _check(announce, 3, "top part of P*_mu is P_mu(x_1, x_2/t, ..)", failures, start)


def schur_oracle(mu, n):
    squares = Partition(mu).squares()
    counts = {}
    for vals in product(range(1, n + 1), repeat=len(squares)):
        f = dict(zip(squares, vals))
        if all(f[(i, j)] <= f[(i, j + 1)] for (i, j) in squares if (i, j + 1) in f) and all(
            f[(i, j)] < f[(i + 1, j)] for (i, j) in squares if (i + 1, j) in f
        ):
            w = [0] * n
            for v in vals:
                w[v - 1] += 1
            if all(a >= b for a, b in zip(w, w[1:])):
                counts[Partition(w)] = counts.get(Partition(w), 0) + 1
    return {lam: CoeffField(c) for lam, c in counts.items()}


def theorem_box():
    return [(mu, n, th) for th in (1, 2) for n in (2, 3) for mu in enumerate_partitions(3, n - 1)]


def test_criterion_04_macdonald_integral(announce):
    start = time.perf_counter()
    failures = []
    for mu, n, th in theorem_box():
        r = verify_theorem_I(mu, n, th)
        if not r.passed:
            failures.append((mu, n, th, r.witness))
    for n in range(1, 5):
        for mu in enumerate_partitions(4, n):
            if dict(macdonald_P(mu, n, 1).coeffs) != schur_oracle(mu, n):
                failures.append(("schur", mu, n))
    elapsed = _check(announce, 4, "integral representation of P_mu; Schur oracle at theta = 1", failures, start)
    assert elapsed < 600


def test_criterion_05_shifted_integral(announce):
    start = time.perf_counter()
    failures = []
    for mu, n, th in theorem_box():
        r = verify_theorem_II(mu, n, th)
        if not r.passed:
            failures.append((mu, n, th, r.witness))
    _check(announce, 5, "integral representation of P*_mu", failures, start)


def test_criterion_06_branching(announce):
    start = time.perf_counter()
    failures = []
    for mu in enumerate_partitions(4, 4):
        r = verify_branching(mu)
        if not r.passed:
            failures.append((mu, r.witness))
    _check(announce, 6, "extracted f_(mu,nu)(d) = psi t^-|nu| <d>_(mu/nu), zero off strips", failures, start)


def test_criterion_07_operators(announce):
    start = time.perf_counter()
    failures = []
    for n in range(1, 5):
        for mu in enumerate_partitions(4, n):
            r = verify_eigen_relation(mu, n)
            if not r.passed:
                failures.append(("eigen", mu, n, r.witness))
    for n in (2, 3):
        for th in (1, 2):
            r = operator_lemma_checks(n, 3, th)
            if not r.passed:
                failures.append(("lemmas", n, th, r.witness))
    _check(announce, 7, "eigen-relation; conjugation, reciprocal and E-stability identities", failures, start)


def test_criterion_08_duality(announce):
    start = time.perf_counter()
    failures = []
    for mu in enumerate_partitions(3, 3):
        top = mu.size + 2
        for lam in enumerate_partitions(top, top):
            r = omega_star_check(mu, lam)
            if not r.passed:
                failures.append((mu, lam, r.witness))
    for k in (1, 2, 3):
        for lam in enumerate_partitions(5, 5):
            r = powersum_duality_check(k, lam)
            if not r.passed:
                failures.append(("powersum", k, lam))
    _check(announce, 8, "duality by evaluations with (-t)^|mu| b_mu'(t,q); power-sum identity", failures, start)


def test_criterion_09_jack(announce):
    start = time.perf_counter()
    failures = []
    for th in (Fraction(1), Fraction(2), Fraction(1, 2)):
        for n in range(1, 5):
            for mu in enumerate_partitions(4, n):
                p = jack_pstar(mu, n, th)
                if not p.is_shifted_symmetric():
                    failures.append(("symmetry", mu, n, th))
                if p.degree() != mu.size:
                    failures.append(("degree", mu, n, th))
                for lam in enumerate_partitions(mu.size + 2, n):
                    v = jack_eval(p, lam)
                    if lam == mu and v != jack_hook_H(mu, th):
                        failures.append(("normalization", mu, n, th))
                    elif not lam.contains(mu) and v != 0:
                        failures.append(("vanishing", mu, lam, n, th))
    for n in range(1, 5):
        for mu in enumerate_partitions(4, n):
            if jack_pstar(mu, n, 1).poly != shifted_schur_tableaux(mu, n):
                failures.append(("schur", mu, n))
            for nu in enumerate_partitions(mu.size, n):
                if interlaces(nu, mu) and jack_psi(mu, nu, 1) != 1:
                    failures.append(("psi", mu, nu))
    for th in (1, 2):
        for mu in enumerate_partitions(3, 3):
            top = mu.size + 2
            for lam in enumerate_partitions(top, top):
                r = jack_limit_check(mu, lam, th)
                if not r.passed:
                    failures.append(("limit", mu, lam, th, r.witness))
    _check(announce, 9, "shifted Jack symmetry, vanishing, normalization, theta=1 reduction, q->1 limit", failures, start)


def test_criterion_10_coherence(announce):
    start = time.perf_counter()
    failures = []
    for mu, n, th in theorem_box():
        r = verify_coherence(mu, n, th)
        if not r.passed:
            failures.append((mu, n, th, r.witness))
    _check(announce, 10, "coherence of shifted Jack polynomials under the discrete beta sum", failures, start)


# -- criterion 11: property suites -----------------------------------------


def suite_divided_integral_symmetric():
    x1, x2, y = (XPolynomial.var(3, i) for i in range(3))
    for r in range(6):
        for c in (ONE, Q, T + 1):
            g = q_integral((y ** r).scale(c), 2, x2, x1).exact_divide(x1 - x2)
            if g.permute([1, 0, 2]) != g:
                yield ("divided integral not symmetric", r)


def suite_vandermonde_integral_skew():
    for n in (2, 3, 4):
        ring = 2 * n - 1
        vy = vandermonde(n - 1, range(n, ring), ring)
        for size in range(5):
            for lam in partitions_of(size, n - 1):
                f = monomial_symmetric(lam, n - 1).embed(ring, list(range(n, ring)))
                res = interlacing_integral(f * vy, n)
                for i in range(n - 1):
                    perm = list(range(n))
                    perm[i], perm[i + 1] = i + 1, i
                    if res.permute(perm) != -res:
                        yield ("not skew", n, lam)


def suite_beta_ratio_symmetric():
    for th in (1, 2, 3):
        for n in (2, 3):
            ring = 2 * n - 1
            density, _ = beta_density(n, th)
            denom, _ = vandermonde_theta(n, th)
            for size in range(3 if th < 3 else 2):
                for lam in partitions_of(size, n - 1):
                    f = monomial_symmetric(lam, n - 1).embed(ring, list(range(n, ring)))
                    ratio = interlacing_integral(f * density, n).exact_divide(denom)
                    try:
                        SymPoly.from_xpoly(ratio)
                    except ValueError:
                        yield ("ratio not symmetric", th, n, lam)
                    if ratio.total_degree() != size:
                        yield ("degree", th, n, lam)


def suite_pochhammer_ratio():
    # the identity carries the sign (-1)^(theta-1); see the design notes
    for th in (1, 2, 3, 4):
        lhs = pochhammer(T * q_power(1 - th), th - 1) / pochhammer(Q / T, th - 1)
        if lhs != (-1) ** (th - 1) * T ** (th - 1) * q_power(-th * (th - 1) // 2):
            yield ("pochhammer ratio", th)


def suite_starred_vandermonde_nonzero():
    for th in (1, 2, 3):
        for n in (2, 3):
            poly, _ = vandermonde_theta(n, th, starred=True)
            for mu in enumerate_partitions(5, n):
                if poly.evaluate(eval_point(mu, n)) == 0:
                    yield ("vanishes", th, n, mu)


def suite_integral_top_coefficient():
    for th in (1, 2, 3):
        for n in (2, 3):
            for mu in enumerate_partitions(3, n - 1):
                e, c = macdonald_integral_side(mu, n, th).leading_term()
                if e != mu.padded(n) or c != capital_C(mu, n, th):
                    yield ("top coefficient", mu, n, th)


def suite_dilation_triangularity():
    for mu in enumerate_partitions(3, 3):
        if not mu:
            continue
        n = len(mu)
        for d in (T, Q * Q, CoeffField(3)):
            for nu in expand_in_pstar(pstar(mu, n).poly.scale_vars([d] * n)):
                if not mu.contains(nu):
                    yield ("support", mu, nu)


def suite_stability():
    for mu in enumerate_partitions(4, 4):
        for n in range(max(len(mu), 1) + 1, 5):
            if pstar(mu, n).poly.specialize(n - 1, ONE) != pstar(mu, n - 1).poly:
                yield ("restriction", mu, n)
        if mu and pstar(mu, len(mu)).poly.specialize(len(mu) - 1, ONE):
            yield ("restriction to zero", mu)


def suite_hook_sums():
    for size in range(9):
        for mu in partitions_of(size):
            if sum(mu.leg(s) for s in mu.squares()) != mu.n_stat():
                yield ("leg sum", mu)
            if sum(mu.arm(s) for s in mu.squares()) != conjugate(mu).n_stat():
                yield ("arm sum", mu)


SUITES = [
    ("divided q-integral is symmetric", suite_divided_integral_symmetric),
    ("integral against V(y) is skew", suite_vandermonde_integral_skew),
    ("beta integral over V^theta is symmetric of degree deg f", suite_beta_ratio_symmetric),
    ("Pochhammer ratio identity", suite_pochhammer_ratio),
    ("starred V^theta nonzero at q^mu", suite_starred_vandermonde_nonzero),
    ("top coefficient of the integral is C(mu, n)", suite_integral_top_coefficient),
    ("dilation expansion supported inside mu", suite_dilation_triangularity),
    ("stability under x_n = 1", suite_stability),
    ("arm and leg sums", suite_hook_sums),
]


def test_criterion_11_property_suites(announce):
    start = time.perf_counter()
    failures = []
    for name, suite in SUITES:
        t0 = time.perf_counter()
        bad = list(suite())
        took = time.perf_counter() - t0
        if bad:
            failures.append((name, bad[0]))
        if took > 120:
            failures.append((name, f"took {took:.0f}s"))
    _check(announce, 11, f"{len(SUITES)} property suites, each under 2 minutes", failures, start)
