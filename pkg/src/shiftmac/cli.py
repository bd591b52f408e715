"""Command line front end: ``shiftmac compute | eval | verify``.

Exit codes: 0 success or all checks passed, 1 a check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import jack, macdonald, shifted
from .combinatorics import Partition, enumerate_partitions, parse_partition, partitions_of
from .macdonald import specialize_theta
from .render import FORMATS, coeff_parts, render, render_value
from .report import VerificationReport

IDENTITIES = (
    "theorem1",
    "theorem2",
    "branching",
    "duality",
    "powersum-duality",
    "vanishing",
    "lemmas",
    "coherence",
    "equivalence",
)
INTEGER_THETA_ONLY = {"theorem1", "theorem2", "coherence", "lemmas"}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# flag parsing
# ---------------------------------------------------------------------------


def _partition(text):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise UsageError(f"bad partition {text!r}: {exc}") from None


def _theta_list(text):
    if text is None:
        return []
    out = []
    for item in text.split(","):
        try:
            out.append(jack.parse_theta(item))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad theta {item!r}") from None
    return out


def _int_list(text, what):
    out = []
    try:
        for item in text.split(","):
            lo, sep, hi = item.partition("-")
            out.extend(range(int(lo), int(hi) + 1) if sep else [int(lo)])
    except ValueError:
        raise UsageError(f"bad {what} list {text!r}") from None
    if not out or min(out) < 1:
        raise UsageError(f"{what} values must be positive")
    return sorted(set(out))


def _single_theta(args, kind):
    thetas = _theta_list(args.theta)
    if len(thetas) > 1:
        raise UsageError("give a single theta")
    theta = thetas[0] if thetas else None
    if kind == "jack":
        if theta is None:
            raise UsageError("jack polynomials need --theta")
        return theta
    if theta == jack.SYMBOLIC:
        return None
    if theta is not None and theta.denominator != 1:
        raise UsageError("t = q^theta needs an integer theta")
    return None if theta is None else int(theta)


# ---------------------------------------------------------------------------
# compute / eval
# ---------------------------------------------------------------------------


def _build(kind, mu, n, theta, method):
    """Return (XPolynomial, extra JSON fields)."""
    extra = {"kind": kind, "mu": mu.text()}
    if kind == "macdonald":
        method = method or "eigen"
        if method == "eigen":
            sym = macdonald.macdonald_P(mu, n, theta)
        elif method == "tableaux":
            sym = macdonald.macdonald_P_tableaux(mu, n).map_coeffs(lambda c: specialize_theta(c, theta))
        else:
            raise UsageError(f"method {method!r} does not apply to macdonald (eigen, tableaux)")
        basis = []
        for lam, c in sym.sorted_items():
            num, den = coeff_parts(c)
            basis.append({"partition": lam.text(), "coeff": {"num": num, "den": den}})
        extra["m_basis"] = basis
        poly = sym.to_xpoly()
    elif kind == "shifted":
        method = method or "interp"
        if method == "interp":
            poly = shifted.pstar_interpolate(mu, n).poly
        elif method == "comb":
            poly = shifted.pstar_combinatorial(mu, n).poly
        elif method == "recursion":
            if len(mu) != n:
                raise UsageError("the recursion needs exactly n nonzero parts")
            poly = shifted.pstar_recursion(mu, n).poly
        else:
            raise UsageError(f"method {method!r} does not apply to shifted (interp, comb, recursion)")
        if theta is not None:
            poly = poly.map_coeffs(lambda c: specialize_theta(c, theta))
    else:
        if method:
            raise UsageError("jack polynomials have a single construction")
        poly = jack.jack_pstar(mu, n, theta).poly
        extra["theta"] = str(theta)
    if theta is not None and kind != "jack":
        extra["theta"] = str(theta)
    return poly, extra


def cmd_compute(args, out):
    mu = _partition(args.mu)
    n = args.n if args.n is not None else max(len(mu), 1)
    if len(mu) > n:
        raise UsageError(f"partition {mu.text()} has more than {n} parts")
    theta = _single_theta(args, args.kind)
    poly, extra = _build(args.kind, mu, n, theta, args.method)
    out.write(render(poly, args.format, extra if args.format == "json" else None) + "\n")
    return 0


def cmd_eval(args, out):
    mu = _partition(args.mu)
    at = _partition(args.at)
    n = args.n if args.n is not None else max(len(mu), len(at), 1)
    if len(mu) > n or len(at) > n:
        raise UsageError(f"partitions must have at most {n} parts")
    theta = _single_theta(args, args.kind)
    if args.kind == "jack":
        value = jack.jack_eval(jack.jack_pstar(mu, n, theta), at)
    else:
        poly, _ = _build(args.kind, mu, n, theta, args.method)
        value = poly.evaluate(shifted.eval_point(at, n))
        value = specialize_theta(value, theta)
    out.write(render_value(value, args.format) + "\n")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _instances(args):
    """List of zero-argument callables, each returning a VerificationReport."""
    ident = args.identity
    size = args.max_mu_size
    ns = _int_list(args.n, "n") if args.n else [2, 3]
    thetas = _theta_list(args.theta) if args.theta else [Fraction(1), Fraction(2)]
    if ident in INTEGER_THETA_ONLY:
        for th in thetas:
            if th == jack.SYMBOLIC or th.denominator != 1:
                raise UsageError(f"{ident} is checked exactly for positive integer theta only, got {th}")
        thetas = [int(th) for th in thetas]
    if ident == "vanishing":
        for th in thetas:
            if th != jack.SYMBOLIC and th.denominator != 1:
                raise UsageError("vanishing with t = q^theta needs integer theta or 'symbolic'")
    jobs = []
    mus = enumerate_partitions(size, max(ns + [size]))
    if ident in ("theorem1", "theorem2", "coherence"):
        fn = {"theorem1": macdonald.verify_theorem_I, "theorem2": shifted.verify_theorem_II,
              "coherence": jack.verify_coherence}[ident]
        for th in thetas:
            for n in ns:
                if n < 2:
                    continue
                for mu in mus:
                    if len(mu) < n:
                        jobs.append(lambda mu=mu, n=n, th=th: fn(mu, n, th))
    elif ident == "branching":
        for mu in mus:
            jobs.append(lambda mu=mu: shifted.verify_branching(mu))
    elif ident == "duality":
        for mu in mus:
            for lam in enumerate_partitions(mu.size + args.extra, mu.size + args.extra):
                jobs.append(lambda mu=mu, lam=lam: shifted.omega_star_check(mu, lam))
    elif ident == "powersum-duality":
        top = args.max_lambda_size
        for k in range(1, size + 1):
            for lam in enumerate_partitions(top, top):
                jobs.append(lambda k=k, lam=lam: shifted.powersum_duality_check(k, lam))
    elif ident == "vanishing":
        for th in thetas:
            spec = None if th == jack.SYMBOLIC else int(th)
            for n in ns:
                for mu in mus:
                    if len(mu) <= n:
                        jobs.append(lambda mu=mu, n=n, spec=spec: shifted.verify_vanishing(mu, n, spec, args.extra))
    elif ident == "lemmas":
        for th in thetas:
            for n in ns:
                jobs.append(lambda n=n, th=th: macdonald.operator_lemma_checks(n, size, th))
    elif ident == "equivalence":
        for n in ns:
            for mu in mus:
                if len(mu) <= n:
                    jobs.append(lambda mu=mu, n=n: shifted.verify_equivalence(mu, n))
    return jobs


def _run_one(job, ident):
    try:
        return job()
    except Exception as exc:  # an instance crashing is a failed check, not a crash of the driver
        return VerificationReport(ident, {}, "fail", {"reason": f"{type(exc).__name__}: {exc}"})


def cmd_verify(args, out):
    jobs = _instances(args)
    if not jobs:
        raise UsageError("the bounds select no instances")
    passed = failed = 0
    with ThreadPoolExecutor(max_workers=max(args.jobs, 1)) as pool:
        # map keeps submission order, so the stream is deterministic
        for report in pool.map(lambda j: _run_one(j, args.identity), jobs):
            if args.no_timing:
                report.elapsed = 0.0
            out.write(report.to_json() + "\n")
            out.flush()
            if report.passed:
                passed += 1
            else:
                failed += 1
    status = "PASS" if not failed else "FAIL"
    print(f"{args.identity}: {passed}/{passed + failed} passed [{status}]", file=sys.stderr)
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="shiftmac", description="Exact Macdonald, shifted Macdonald and shifted Jack polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, helptext in (("compute", "print a polynomial"), ("eval", "evaluate at a partition")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("kind", choices=("macdonald", "shifted", "jack"))
        p.add_argument("--mu", required=True, help='partition, e.g. "3,1"; "0" is empty')
        p.add_argument("--n", type=int, help="number of variables (default: length of the partitions)")
        p.add_argument("--theta", help='integer, "p/r" or "symbolic"')
        p.add_argument("--method", help="eigen|tableaux (macdonald), interp|comb|recursion (shifted)")
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", help="write to this file instead of stdout")
        if name == "eval":
            p.add_argument("--at", required=True, help="evaluation partition lambda")

    p = sub.add_parser("verify", help="check an identity over a box of instances")
    p.add_argument("identity", choices=IDENTITIES)
    p.add_argument("--max-mu-size", type=int, default=3)
    p.add_argument("--n", help='variable counts: "3", "2,3" or "2-4" (default 2,3)')
    p.add_argument("--theta", help='comma list of theta values (default 1,2)')
    p.add_argument("--extra", type=int, default=2, help="grid reaches |lambda| <= |mu| + extra")
    p.add_argument("--max-lambda-size", type=int, default=5, help="lambda bound for powersum-duality")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timing", action="store_true", help="report elapsed as 0 for reproducible output")
    p.add_argument("--out", help="write the report stream to this file instead of stdout")
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "max_mu_size", 0) < 0:
            raise UsageError("--max-mu-size must be nonnegative")
        handler = {"compute": cmd_compute, "eval": cmd_eval, "verify": cmd_verify}[args.command]
        if args.out:
            with open(args.out, "w") as fh:
                return handler(args, fh)
        return handler(args, sys.stdout)
    except UsageError as exc:
        print(f"shiftmac: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        # reader went away (e.g. piped into head); stop quietly
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1


if __name__ == "__main__":
    sys.exit(main())
