"""Exact arithmetic: the coefficient field Q(q, t) and sparse polynomials over it.

Bivariate polynomial kernels (multiplication, gcd) are delegated to FLINT
through ``python-flint``; everything above the kernel -- canonical forms,
serialization, substitution, the x-polynomial layer -- lives here.
"""
from __future__ import annotations

import heapq
import re
from fractions import Fraction
from functools import reduce
from operator import add

import flint

__all__ = [
    "QTPoly",
    "CoeffField",
    "UnivariateRational",
    "XPolynomial",
    "ExactDivisionError",
    "SubstitutionError",
    "LimitError",
    "Q",
    "T",
    "ONE",
    "ZERO",
    "qt_monomial",
    "q_power",
    "parse_param_expr",
    "substitute_params",
    "limit_at_one",
    "sum_coeffs",
]

_ZCTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "lex")
_QCTX = flint.fmpq_mpoly_ctx.get(("q", "t"), "lex")
_ZONE = _ZCTX.constant(1)
_ZZERO = _ZCTX.constant(0)


class ExactDivisionError(ArithmeticError):
    """Raised when a polynomial division that must be exact leaves a remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class SubstitutionError(ZeroDivisionError):
    pass


class LimitError(ArithmeticError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------------
# QTPoly
# ---------------------------------------------------------------------------


class QTPoly:
    """Polynomial in q, t with rational coefficients.

    Terms iterate in ascending lexicographic order on the exponent pair
    ``(a, b)`` of ``q^a t^b``; that order fixes the canonical string.
    """

    __slots__ = ("_p",)

    def __init__(self, terms=None):
        if terms is None:
            self._p = _QCTX.from_dict({})
        elif isinstance(terms, flint.fmpq_mpoly):
            self._p = terms
        elif isinstance(terms, flint.fmpz_mpoly):
            self._p = _QCTX.from_dict({k: flint.fmpq(int(v)) for k, v in terms.to_dict().items()})
        elif isinstance(terms, QTPoly):
            self._p = terms._p
        elif isinstance(terms, dict):
            clean = {}
            for (a, b), c in terms.items():
                if a < 0 or b < 0:
                    raise ValueError("QTPoly exponents must be nonnegative")
                c = _frac(c)
                if c:
                    clean[(int(a), int(b))] = flint.fmpq(c.numerator, c.denominator)
            self._p = _QCTX.from_dict(clean)
        else:
            c = _frac(terms)
            self._p = _QCTX.constant(flint.fmpq(c.numerator, c.denominator))

    def terms(self):
        """List of ``((a, b), Fraction)`` in ascending lex order."""
        return sorted((tuple(int(e) for e in k), _frac(v)) for k, v in self._p.to_dict().items())

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def __bool__(self):
        return not self._p.is_zero()

    def __eq__(self, other):
        if isinstance(other, QTPoly):
            return self._p == other._p
        try:
            return self._p == QTPoly(other)._p
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(tuple(self.terms()))

    def __add__(self, other):
        return QTPoly(self._p + QTPoly(other)._p)

    __radd__ = __add__

    def __sub__(self, other):
        return QTPoly(self._p - QTPoly(other)._p)

    def __rsub__(self, other):
        return QTPoly(QTPoly(other)._p - self._p)

    def __neg__(self):
        return QTPoly(-self._p)

    def __mul__(self, other):
        return QTPoly(self._p * QTPoly(other)._p)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return QTPoly(self._p ** k)

    def degrees(self):
        return tuple(int(d) for d in self._p.degrees())

    def evaluate(self, q, t):
        return sum((c * Fraction(q) ** a * Fraction(t) ** b for (a, b), c in self.terms()), Fraction(0))

    def canonical_str(self) -> str:
        ts = self.terms()
        if not ts:
            return "0"
        out = []
        for (a, b), c in ts:
            s = _fmt_rational(c)
            if a:
                s += f"*q^{a}"
            if b:
                s += f"*t^{b}"
            out.append(s)
        return "+".join(out)

    @classmethod
    def parse(cls, text: str) -> "QTPoly":
        """Inverse of :meth:`canonical_str`."""
        text = text.strip()
        if text == "0":
            return cls()
        terms = {}
        for chunk in text.split("+"):
            parts = chunk.split("*")
            c = Fraction(parts[0])
            a = b = 0
            for p in parts[1:]:
                var, _, e = p.partition("^")
                if var == "q":
                    a = int(e)
                elif var == "t":
                    b = int(e)
                else:
                    raise ValueError(f"unknown variable {var!r} in {text!r}")
            terms[(a, b)] = terms.get((a, b), Fraction(0)) + c
        return cls(terms)

    def pretty(self) -> str:
        return _pretty_terms([((a, b), c) for (a, b), c in reversed(self.terms())], ("q", "t"))

    def __repr__(self):
        return f"QTPoly({self.pretty()!r})"

    __str__ = pretty


def _pretty_monomial(exps, names):
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _pretty_terms(items, names) -> str:
    if not items:
        return "0"
    out = []
    for i, (exps, c) in enumerate(items):
        mono = _pretty_monomial(exps, names)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{_fmt_rational(a)}*{mono}"
        else:
            body = _fmt_rational(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# CoeffField
# ---------------------------------------------------------------------------


def _zpoly_from_any(x):
    """Return ``(integer polynomial, positive integer denominator)``."""
    if isinstance(x, flint.fmpz_mpoly):
        return x, 1
    if isinstance(x, QTPoly):
        d = {k: _frac(v) for k, v in x._p.to_dict().items()}
        den = reduce(lambda a, b: a * b // _gcd(a, b), (c.denominator for c in d.values()), 1)
        return _ZCTX.from_dict({k: int(c * den) for k, c in d.items()}), den
    c = _frac(x)
    return _ZCTX.constant(c.numerator), c.denominator


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class CoeffField:
    """Element of Q(q, t), always held as a reduced fraction.

    Internally numerator and denominator are coprime integer polynomials with
    the denominator's lex-leading coefficient positive.  The public ``num``
    and ``den`` follow the rational-content convention instead: the
    denominator is made primitive (integer content 1) and the numerator may
    carry rational coefficients.
    """

    __slots__ = ("_n", "_d", "_h")

    def __init__(self, num=0, den=1):
        if isinstance(num, CoeffField) and den == 1:
            self._n, self._d, self._h = num._n, num._d, num._h
            return
        if isinstance(num, CoeffField) or isinstance(den, CoeffField):
            r = CoeffField(num) / CoeffField(den)
            self._n, self._d, self._h = r._n, r._d, None
            return
        n, nd = _zpoly_from_any(num)
        d, dd = _zpoly_from_any(den)
        # num/nd / (d/dd) = num*dd / (d*nd)
        if dd != 1:
            n = n * dd
        if nd != 1:
            d = d * nd
        self._n, self._d = _reduce(n, d)
        self._h = None

    @classmethod
    def _raw(cls, n, d):
        obj = cls.__new__(cls)
        obj._n = n
        obj._d = d
        obj._h = None
        return obj

    # -- accessors ---------------------------------------------------------

    @property
    def num(self) -> QTPoly:
        c = int(self._d.content())
        return QTPoly(_QCTX.from_dict({k: flint.fmpq(int(v), c) for k, v in self._n.to_dict().items()}))

    @property
    def den(self) -> QTPoly:
        c = int(self._d.content())
        return QTPoly(_QCTX.from_dict({k: flint.fmpq(int(v), c) for k, v in self._d.to_dict().items()}))

    def numerator_zpoly(self):
        return self._n

    def denominator_zpoly(self):
        return self._d

    def is_polynomial(self) -> bool:
        return self._d.is_constant()

    def is_constant(self) -> bool:
        return self._n.is_constant() and self._d.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return Fraction(int(self._n.leading_coefficient()) if not self._n.is_zero() else 0,
                        int(self._d.leading_coefficient()))

    def degrees(self):
        """Max exponents of (q, t) over numerator and denominator."""
        dn = self._n.degrees() if not self._n.is_zero() else (0, 0)
        dd = self._d.degrees()
        return tuple(max(int(a), int(b)) for a, b in zip(dn, dd))

    def uses_t(self) -> bool:
        return (not self._n.is_zero() and int(self._n.degrees()[1]) > 0) or int(self._d.degrees()[1]) > 0

    def uses_q(self) -> bool:
        return (not self._n.is_zero() and int(self._n.degrees()[0]) > 0) or int(self._d.degrees()[0]) > 0

    # -- arithmetic --------------------------------------------------------

    def __bool__(self):
        return not self._n.is_zero()

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_one(self) -> bool:
        return self._n.is_one() and self._d.is_one()

    def __eq__(self, other):
        if not isinstance(other, CoeffField):
            try:
                other = CoeffField(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._n == other._n and self._d == other._d

    def __hash__(self):
        if self._h is None:
            self._h = hash((tuple(sorted(self._n.to_dict().items())), tuple(sorted(self._d.to_dict().items()))))
        return self._h

    def __neg__(self):
        return CoeffField._raw(-self._n, self._d)

    def __add__(self, other):
        if not isinstance(other, CoeffField):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if other._n.is_zero():
            return self
        if self._n.is_zero():
            return other
        ad, bd = self._d, other._d
        if ad.is_one() and bd.is_one():
            return CoeffField._raw(self._n + other._n, _ZONE)
        if ad == bd:
            n = self._n + other._n
            if n.is_zero():
                return ZERO
            g = n.gcd(ad)
            if g.is_one():
                return CoeffField._raw(n, ad)
            return CoeffField._raw(n // g, ad // g)
        g = ad.gcd(bd)
        if g.is_one():
            return CoeffField._raw(self._n * bd + other._n * ad, ad * bd)
        d1 = ad // g
        d2 = bd // g
        n = self._n * d2 + other._n * d1
        if n.is_zero():
            return ZERO
        g2 = n.gcd(g)
        if not g2.is_one():
            n = n // g2
            g = g // g2
        return CoeffField._raw(n, d1 * d2 * g)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CoeffField):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CoeffField):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        if self._n.is_zero() or other._n.is_zero():
            return ZERO
        an, ad, bn, bd = self._n, self._d, other._n, other._d
        if ad.is_one() and bd.is_one():
            return CoeffField._raw(an * bn, _ZONE)
        if not bd.is_one():
            g = an.gcd(bd)
            if not g.is_one():
                an = an // g
                bd = bd // g
        if not ad.is_one():
            g = bn.gcd(ad)
            if not g.is_one():
                bn = bn // g
                ad = ad // g
        n, d = an * bn, ad * bd
        if int(d.leading_coefficient()) < 0:
            n, d = -n, -d
        return CoeffField._raw(n, d)

    __rmul__ = __mul__

    def inverse(self):
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q,t)")
        n, d = self._d, self._n
        if int(d.leading_coefficient()) < 0:
            n, d = -n, -d
        return CoeffField._raw(n, d)

    def __truediv__(self, other):
        if not isinstance(other, CoeffField):
            other = _coerce(other)
            if other is NotImplemented:
                return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return CoeffField._raw(self._n ** k, self._d ** k)

    # -- evaluation / substitution ----------------------------------------

    def evaluate(self, q, t) -> Fraction:
        num = self.num.evaluate(q, t)
        den = self.den.evaluate(q, t)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the evaluation point")
        return num / den

    def t_to_q_power(self, theta: int) -> "CoeffField":
        """Specialize t = q^theta (theta a nonnegative integer)."""
        if theta < 0:
            return substitute_params(self, t=f"q^{theta}")
        qq = _ZCTX.gens()[0]
        n = self._n.compose(qq, qq ** theta)
        d = self._d.compose(qq, qq ** theta)
        if d.is_zero():
            raise SubstitutionError("t -> q^theta makes the denominator vanish")
        return CoeffField._raw(*_reduce(n, d))

    # -- text ----------------------------------------------------------------

    def canonical_str(self) -> str:
        return f"({self.num.canonical_str()})/({self.den.canonical_str()})"

    @classmethod
    def parse(cls, text: str) -> "CoeffField":
        m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
        if m:
            return cls(QTPoly.parse(m.group(1)), QTPoly.parse(m.group(2)))
        return cls(QTPoly.parse(text))

    def pretty(self) -> str:
        num = self.num
        if self._d.is_constant():
            return num.pretty()
        den = self.den
        ns = num.pretty()
        if len(num.terms()) > 1:
            ns = f"({ns})"
        ds = den.pretty()
        if len(den.terms()) > 1 or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"CoeffField({self.pretty()!r})"

    __str__ = pretty


def _reduce(n, d):
    if d.is_zero():
        raise ZeroDivisionError("zero denominator in Q(q,t)")
    if n.is_zero():
        return _ZZERO, _ZONE
    g = n.gcd(d)
    if not g.is_one():
        n = n // g
        d = d // g
    if int(d.leading_coefficient()) < 0:
        n, d = -n, -d
    return n, d


def _coerce(x):
    if isinstance(x, CoeffField):
        return x
    if isinstance(x, (int, Fraction, QTPoly, flint.fmpz_mpoly, flint.fmpq)):
        return CoeffField(x)
    return NotImplemented


ZERO = CoeffField(0)
ONE = CoeffField(1)
Q = CoeffField(_ZCTX.gens()[0])
T = CoeffField(_ZCTX.gens()[1])


def qt_monomial(a: int, b: int, coeff=1) -> CoeffField:
    """``coeff * q^a * t^b`` for any integer exponents."""
    num = {(max(a, 0), max(b, 0)): coeff}
    den = {(max(-a, 0), max(-b, 0)): 1}
    return CoeffField(QTPoly(num), QTPoly(den))


def q_power(k: int) -> CoeffField:
    return qt_monomial(k, 0)


def sum_coeffs(values):
    """Sum a list of field elements, batching equal denominators for Q(q,t)."""
    values = [v for v in values if v]
    if not values:
        return None
    if len(values) == 1:
        return values[0]
    if not isinstance(values[0], CoeffField):
        return sum(values[1:], values[0])
    poly_part = None
    groups = {}
    for v in values:
        if v._d.is_one():
            poly_part = v._n if poly_part is None else poly_part + v._n
        else:
            key = tuple(sorted(v._d.to_dict().items()))
            if key in groups:
                groups[key][0] = groups[key][0] + v._n
            else:
                groups[key] = [v._n, v._d]
    acc = CoeffField._raw(poly_part, _ZONE) if poly_part is not None else ZERO
    for n, d in groups.values():
        if n.is_zero():
            continue
        acc = acc + CoeffField._raw(*_reduce(n, d))
    return acc


# ---------------------------------------------------------------------------
# Univariate rational functions (Jack parameter theta, limit variable u)
# ---------------------------------------------------------------------------


class UnivariateRational:
    """Reduced ratio of rational-coefficient polynomials in one variable.

    The denominator is monic.  ``var`` only affects printing.
    """

    __slots__ = ("num", "den", "var")

    def __init__(self, num=0, den=1, var="u"):
        if isinstance(num, UnivariateRational):
            var = num.var
            n, d = num.num, num.den
            if isinstance(den, UnivariateRational):
                n, d = n * den.den, d * den.num
            else:
                d = d * flint.fmpq_poly([_frac_to_fmpq(den)]) if not isinstance(den, flint.fmpq_poly) else d * den
        else:
            n = _to_fmpq_poly(num)
            d = den.num * 1 if isinstance(den, UnivariateRational) else _to_fmpq_poly(den)
            if isinstance(den, UnivariateRational):
                n = n * den.den
                var = den.var
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        if n.is_zero():
            self.num, self.den, self.var = flint.fmpq_poly([]), flint.fmpq_poly([1]), var
            return
        g = n.gcd(d)
        if g.degree() > 0:
            n = n // g
            d = d // g
        lc = d[d.degree()]
        self.num, self.den, self.var = n / lc, d / lc, var

    @classmethod
    def gen(cls, var="u"):
        return cls(flint.fmpq_poly([0, 1]), 1, var)

    def _wrap(self, other):
        if isinstance(other, UnivariateRational):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return UnivariateRational(other, 1, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return UnivariateRational(self.num + other.num, self.den, self.var)
        return UnivariateRational(self.num * other.den + other.num * self.den, self.den * other.den, self.var)

    __radd__ = __add__

    def __neg__(self):
        return UnivariateRational(-self.num, self.den, self.var)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return UnivariateRational(self.num * other.num, self.den * other.den, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return UnivariateRational(self.num * other.den, self.den * other.num, self.var)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return UnivariateRational(1, 1, self.var) / (self ** (-k))
        return UnivariateRational(self.num ** k, self.den ** k, self.var)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return _frac(self.num[0]) / _frac(self.den[0])

    def __call__(self, x):
        x = flint.fmpq(*_frac_pair(x))
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError("pole")
        return _frac(self.num(x) / d)

    @staticmethod
    def _poly_items(p):
        return [(i, _frac(c)) for i, c in enumerate(p.coeffs()) if c != 0]

    def canonical_parts(self):
        def fmt(p):
            items = self._poly_items(p)
            if not items:
                return "0"
            return "+".join(_fmt_rational(c) + (f"*{self.var}^{i}" if i else "") for i, c in items)
        return fmt(self.num), fmt(self.den)

    def pretty(self) -> str:
        def fmt(p):
            items = [((i,), c) for i, c in reversed(self._poly_items(p))]
            return _pretty_terms(items, (self.var,))
        ns = fmt(self.num)
        if self.den.degree() == 0:
            return ns
        if len(self._poly_items(self.num)) > 1:
            ns = f"({ns})"
        return f"{ns}/({fmt(self.den)})"

    def __repr__(self):
        return f"UnivariateRational({self.pretty()!r})"

    __str__ = pretty


def _frac_pair(x):
    f = _frac(x)
    return f.numerator, f.denominator


def _frac_to_fmpq(x):
    return flint.fmpq(*_frac_pair(x))


def _to_fmpq_poly(x):
    if isinstance(x, flint.fmpq_poly):
        return x
    if isinstance(x, flint.fmpz_poly):
        return flint.fmpq_poly(x)
    if isinstance(x, (list, tuple)):
        return flint.fmpq_poly([_frac_to_fmpq(c) for c in x])
    return flint.fmpq_poly([_frac_to_fmpq(x)])


# ---------------------------------------------------------------------------
# Parameter substitution and the q -> 1 limit
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"([qtu])(?:\^(-?\d+))?")


def parse_param_expr(expr):
    """Parse a substitution target such as ``"1/q"``, ``"t/q"``, ``"q^3"``,
    ``"u^2"`` or ``"1/2"`` into ``(coefficient, {var: exponent})``.

    Only Laurent monomials with a rational coefficient are accepted.
    """
    if isinstance(expr, tuple):
        return expr
    if isinstance(expr, (int, Fraction)):
        return Fraction(expr), {}
    s = str(expr).replace(" ", "")
    num_s, _, den_s = s.partition("/")
    coeff = Fraction(1)
    exps = {}

    def absorb(part, sign):
        nonlocal coeff
        for factor in part.split("*"):
            if not factor:
                raise ValueError(f"bad parameter expression {expr!r}")
            m = _TOKEN.fullmatch(factor)
            if m:
                e = int(m.group(2)) if m.group(2) else 1
                exps[m.group(1)] = exps.get(m.group(1), 0) + sign * e
            else:
                c = Fraction(factor)
                coeff = coeff * c if sign > 0 else coeff / c
    absorb(num_s, 1)
    if den_s:
        absorb(den_s, -1)
    if "u" in exps and ({"q", "t"} & set(exps)):
        raise ValueError("cannot mix u with q, t in one target")
    return coeff, {k: v for k, v in exps.items() if v}


def _subst_zpoly(p, qt, tt):
    """Substitute monomial targets into an integer polynomial.

    Returns a dict of Laurent exponent tuple -> Fraction coefficient.  The
    exponent tuple is (q, t) or (u,) depending on the targets.
    """
    (cq, eq), (ct, et) = qt, tt
    use_u = "u" in eq or "u" in et
    out = {}
    for (a, b), c in p.to_dict().items():
        a, b, c = int(a), int(b), int(c)
        coeff = Fraction(c) * cq ** a * ct ** b
        if not coeff:
            continue
        if use_u:
            key = (a * eq.get("u", 0) + b * et.get("u", 0),)
        else:
            key = (a * eq.get("q", 0) + b * et.get("q", 0), a * eq.get("t", 0) + b * et.get("t", 0))
        out[key] = out.get(key, 0) + coeff
    return {k: v for k, v in out.items() if v}


def _laurent_qt(d):
    if not d:
        return ZERO
    mq = min(k[0] for k in d)
    mt = min(k[1] for k in d)
    poly = CoeffField(QTPoly({(k[0] - mq, k[1] - mt): v for k, v in d.items()}))
    return poly * qt_monomial(mq, mt)


def _laurent_u(d):
    if not d:
        return UnivariateRational(0)
    m = min(k[0] for k in d)
    deg = max(k[0] for k in d) - m
    coeffs = [Fraction(0)] * (deg + 1)
    for (e,), v in d.items():
        coeffs[e - m] += v
    r = UnivariateRational(coeffs)
    if m > 0:
        r = r * UnivariateRational.gen("u") ** m
    elif m < 0:
        r = r / UnivariateRational.gen("u") ** (-m)
    return r


def substitute_params(f, q=None, t=None):
    """Substitute Laurent monomials for the parameters q and t.

    ``f`` may be a :class:`CoeffField` or an :class:`XPolynomial` over it.
    Targets are strings (``"1/q"``, ``"t/q"``, ``"q^2"``, ``"u^3"``, ``"2"``)
    or already parsed pairs.  With ``u`` targets the result lives in
    :class:`UnivariateRational` in ``u``.
    """
    qt = parse_param_expr(q if q is not None else "q")
    tt = parse_param_expr(t if t is not None else "t")
    if isinstance(f, XPolynomial):
        return f.map_coeffs(lambda c: substitute_params(c, qt, tt))
    if not isinstance(f, CoeffField):
        f = CoeffField(f)
    # fast path: t -> q^k with k >= 0
    if q is None or qt == (1, {"q": 1}):
        if tt[0] == 1 and set(tt[1]) <= {"q"} and tt[1].get("q", 0) >= 0:
            return f.t_to_q_power(tt[1].get("q", 0))
    use_u = "u" in qt[1] or "u" in tt[1]
    nd = _subst_zpoly(f._n, qt, tt)
    dd = _subst_zpoly(f._d, qt, tt)
    if not dd:
        raise SubstitutionError("substitution makes the denominator identically zero")
    if use_u:
        return _laurent_u(nd) / _laurent_u(dd)
    return _laurent_qt(nd) / _laurent_qt(dd)


def _u_minus_one_multiplicity(p):
    one = flint.fmpq(1)
    lin = flint.fmpq_poly([-1, 1])
    k = 0
    while not p.is_zero() and p(one) == 0:
        p = p // lin
        k += 1
    return k, p


def limit_at_one(f: UnivariateRational) -> Fraction:
    """Exact value of ``f(u)`` as ``u -> 1``.

    Strips the powers of ``(u - 1)`` from numerator and denominator; a
    surplus in the denominator means a genuine pole and raises LimitError.
    """
    if not isinstance(f, UnivariateRational):
        raise TypeError("limit_at_one expects a univariate rational function")
    if f.num.is_zero():
        return Fraction(0)
    kn, n = _u_minus_one_multiplicity(f.num)
    kd, d = _u_minus_one_multiplicity(f.den)
    if kd > kn:
        raise LimitError(f"pole of order {kd - kn} at u = 1")
    if kn > kd:
        return Fraction(0)
    one = flint.fmpq(1)
    return _frac(n(one)) / _frac(d(one))


# ---------------------------------------------------------------------------
# XPolynomial
# ---------------------------------------------------------------------------


def _is_zero(c):
    return not c


class XPolynomial:
    """Sparse polynomial in ``x_1..x_nvars`` with field coefficients.

    Coefficients are any exact field elements (``CoeffField``, ``Fraction``,
    ``UnivariateRational``); a dict maps exponent tuples to nonzero values.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            self.terms = {tuple(e): c for e, c in terms.items() if not _is_zero(c)}
            for e in self.terms:
                if len(e) != nvars or min(e, default=0) < 0:
                    raise ValueError(f"bad exponent vector {e} for {nvars} variables")

    @classmethod
    def _raw(cls, nvars, terms):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, nvars, c):
        return cls._raw(nvars, {(0,) * nvars: c} if not _is_zero(c) else {})

    @classmethod
    def var(cls, nvars, i, one=ONE):
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): one})

    @classmethod
    def monomial(cls, exps, c=ONE):
        exps = tuple(exps)
        return cls._raw(len(exps), {exps: c} if not _is_zero(c) else {})

    # -- basic queries -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coeff(self, exps, default=None):
        return self.terms.get(tuple(exps), default)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def leading_term(self):
        """Lex-leading ``(exps, coeff)`` with x_1 > x_2 > ..."""
        e = max(self.terms)
        return e, self.terms[e]

    def sorted_terms(self):
        """Terms in descending lex order."""
        return sorted(self.terms.items(), reverse=True)

    def homogeneous_part(self, d: int):
        return XPolynomial._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def used_vars(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, XPolynomial):
            if other.nvars != self.nvars:
                raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        return XPolynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            if e in res:
                s = res[e] + c
                if _is_zero(s):
                    del res[e]
                else:
                    res[e] = s
            else:
                res[e] = c
        return XPolynomial._raw(self.nvars, res)

    __radd__ = __add__

    def __neg__(self):
        return XPolynomial._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        if _is_zero(c):
            return XPolynomial(self.nvars)
        return XPolynomial._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, XPolynomial):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        buckets = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(map(add, e1, e2))
                p = c1 * c2
                lst = buckets.get(e)
                if lst is None:
                    buckets[e] = [p]
                else:
                    lst.append(p)
        res = {}
        for e, lst in buckets.items():
            s = lst[0] if len(lst) == 1 else sum_coeffs(lst)
            if s is not None and not _is_zero(s):
                res[e] = s
        return XPolynomial._raw(self.nvars, res)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = XPolynomial.constant(self.nvars, _one_like(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, XPolynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        if _is_zero(other):
            return not self.terms
        return self.terms == {(0,) * self.nvars: other}

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- transformations -----------------------------------------------------

    def map_coeffs(self, fn):
        res = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not _is_zero(v):
                res[e] = v
        return XPolynomial._raw(self.nvars, res)

    def scale_vars(self, factors):
        """Substitute ``x_i -> factors[i] * x_i`` (``None`` leaves x_i alone)."""
        cache = [{} for _ in factors]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = factors[i] ** k
            return cache[i][k]

        res = {}
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k and factors[i] is not None:
                    v = v * power(i, k)
            if not _is_zero(v):
                res[e] = v
        return XPolynomial._raw(self.nvars, res)

    def permute(self, perm):
        """New polynomial whose variable ``perm[i]`` receives old variable i."""
        res = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                ne[perm[i]] = k
            res[tuple(ne)] = c
        return XPolynomial._raw(self.nvars, res)

    def embed(self, nvars: int, positions):
        """Move variable i to slot ``positions[i]`` of a bigger ring."""
        res = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                ne[positions[i]] += k
            res[tuple(ne)] = c
        return XPolynomial._raw(nvars, res)

    def drop_vars(self, keep):
        """Project to the variables in ``keep``; the others must not occur."""
        keep = list(keep)
        drop = [i for i in range(self.nvars) if i not in keep]
        res = {}
        for e, c in self.terms.items():
            if any(e[i] for i in drop):
                raise ValueError("dropped variable still occurs")
            res[tuple(e[i] for i in keep)] = c
        return XPolynomial._raw(len(keep), res)

    def collect(self, i: int):
        """Split by the power of x_i: ``{k: coefficient polynomial (x_i removed)}``."""
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: XPolynomial._raw(self.nvars, d) for k, d in out.items()}

    def compose(self, i: int, value: "XPolynomial"):
        """Substitute the polynomial ``value`` (same ring) for x_i."""
        if not isinstance(value, XPolynomial):
            value = XPolynomial.constant(self.nvars, value)
        powers = {0: XPolynomial.constant(self.nvars, _one_like(self))}
        result = XPolynomial(self.nvars)
        for k, rest in sorted(self.collect(i).items()):
            if k not in powers:
                j = max(powers)
                p = powers[j]
                while j < k:
                    p = p * value
                    j += 1
                    powers[j] = p
            result = result + rest * powers[k]
        return result

    def specialize(self, i: int, value):
        """Set x_i to a scalar and drop the variable."""
        keep = [j for j in range(self.nvars) if j != i]
        res = {}
        for e, c in self.terms.items():
            v = c * (value ** e[i]) if e[i] else c
            key = tuple(e[j] for j in keep)
            res[key] = res[key] + v if key in res else v
        return XPolynomial(len(keep), res)

    def evaluate(self, values):
        """Evaluate at a full point; returns a field element (or 0)."""
        cache = [dict() for _ in range(self.nvars)]

        def power(i, k):
            d = cache[i]
            if k not in d:
                d[k] = values[i] ** k
            return d[k]

        acc = []
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * power(i, k)
            acc.append(v)
        s = sum_coeffs(acc)
        return s if s is not None else _zero_like(self)

    def exact_divide(self, divisor: "XPolynomial") -> "XPolynomial":
        """Quotient ``Q`` with ``self == divisor * Q``; raise on remainder."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lb_e, lb_c = divisor.leading_term()
        if len(divisor.terms) == 1:
            res = {}
            inv = 1 / lb_c
            for e, c in self.terms.items():
                ne = tuple(a - b for a, b in zip(e, lb_e))
                if min(ne, default=0) < 0:
                    raise ExactDivisionError("monomial division leaves a remainder", self)
                res[ne] = c * inv
            return XPolynomial._raw(self.nvars, res)
        inv = 1 / lb_c
        rem = dict(self.terms)
        heap = [tuple(-k for k in e) for e in rem]
        heapq.heapify(heap)
        quot = {}
        rest = [(e, c) for e, c in divisor.terms.items() if e != lb_e]
        while heap:
            key = heapq.heappop(heap)
            e = tuple(-k for k in key)
            c = rem.get(e)
            if c is None:
                continue
            ne = tuple(a - b for a, b in zip(e, lb_e))
            if min(ne, default=0) < 0:
                raise ExactDivisionError(
                    "polynomial division leaves a nonzero remainder",
                    XPolynomial._raw(self.nvars, rem),
                )
            qc = c * inv
            quot[ne] = qc
            del rem[e]
            for de, dc in rest:
                me = tuple(map(add, ne, de))
                v = dc * qc
                if me in rem:
                    s = rem[me] - v
                    if _is_zero(s):
                        del rem[me]
                    else:
                        rem[me] = s
                else:
                    rem[me] = -v
                    heapq.heappush(heap, tuple(-k for k in me))
        return XPolynomial._raw(self.nvars, quot)

    def __repr__(self):
        return f"XPolynomial({self.nvars}, {self.pretty()!r})"

    def pretty(self, names=None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = _pretty_monomial(e, names)
            cs = str(c)
            simple = re.fullmatch(r"-?\d+(/\d+)?|[a-z]+(\^\d+)?", cs) is not None
            if not mono:
                term = cs if simple else f"({cs})"
            elif cs == "1":
                term = mono
            elif cs == "-1":
                term = "-" + mono
            else:
                term = f"{cs if simple else '(' + cs + ')'}*{mono}"
            out.append(term)
        s = out[0]
        for term in out[1:]:
            s += " - " + term[1:] if term.startswith("-") else " + " + term
        return s

    __str__ = pretty


def _one_like(p: XPolynomial):
    for c in p.terms.values():
        if isinstance(c, CoeffField):
            return ONE
        if isinstance(c, Fraction):
            return Fraction(1)
        if isinstance(c, UnivariateRational):
            return UnivariateRational(1, 1, c.var)
        return c ** 0
    return ONE


def _zero_like(p: XPolynomial):
    one = _one_like(p)
    return one - one
