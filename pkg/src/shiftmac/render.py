"""Text, LaTeX and JSON renderings of polynomials, plus the JSON reader."""
from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import CoeffField, QTPoly, UnivariateRational, XPolynomial

__all__ = ["coeff_parts", "parse_coeff", "to_json", "from_json", "to_text", "to_latex", "render", "render_value"]

FORMATS = ("json", "text", "latex")


def _parameters(poly: XPolynomial):
    for c in poly.terms.values():
        return ["q", "t"] if isinstance(c, CoeffField) else ["theta"]
    return ["q", "t"]


def coeff_parts(c):
    """Canonical (num, den) strings for any supported coefficient."""
    if isinstance(c, CoeffField):
        return c.num.canonical_str(), c.den.canonical_str()
    if isinstance(c, UnivariateRational):
        return c.canonical_parts()
    c = Fraction(c)
    return str(c.numerator), str(c.denominator)


def _parse_univariate(text: str, var: str):
    coeffs = {}
    if text.strip() != "0":
        for chunk in text.split("+"):
            c, _, power = chunk.partition("*")
            k = int(power.split("^")[1]) if power else 0
            coeffs[k] = coeffs.get(k, Fraction(0)) + Fraction(c)
    return [coeffs.get(i, Fraction(0)) for i in range(max(coeffs, default=0) + 1)]


def parse_coeff(num: str, den: str, parameters):
    if parameters == ["q", "t"]:
        return CoeffField(QTPoly.parse(num), QTPoly.parse(den))
    value = UnivariateRational(_parse_univariate(num, "theta"), _parse_univariate(den, "theta"), var="theta")
    return value.to_fraction() if value.is_constant() else value


def to_json(poly: XPolynomial, extra=None) -> str:
    """{"vars", "parameters", "terms": [{"exps", "coeff": {"num", "den"}}]}, terms in descending lex."""
    params = _parameters(poly)
    terms = []
    for exps, c in poly.sorted_terms():
        num, den = coeff_parts(c)
        terms.append({"exps": list(exps), "coeff": {"num": num, "den": den}})
    doc = {"vars": poly.nvars, "parameters": params, "terms": terms}
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True)


def from_json(text: str) -> XPolynomial:
    doc = json.loads(text)
    params = doc["parameters"]
    terms = {}
    for term in doc["terms"]:
        c = parse_coeff(term["coeff"]["num"], term["coeff"]["den"], params)
        terms[tuple(term["exps"])] = c
    return XPolynomial(doc["vars"], terms)


def to_text(poly: XPolynomial) -> str:
    return poly.pretty()


_POWER = re.compile(r"\^(-?\d+)")


def _latex_scalar(text: str) -> str:
    text = _POWER.sub(lambda m: "^{%s}" % m.group(1), text)
    text = text.replace("theta", r"\theta").replace("*", " ")
    return text


def _latex_coeff(c) -> str:
    if isinstance(c, CoeffField):
        if c.denominator_zpoly().is_constant():
            return _latex_scalar(c.pretty())
        ns, ds = c.num.pretty(), c.den.pretty()
        return r"\frac{%s}{%s}" % (_latex_scalar(ns), _latex_scalar(ds))
    if isinstance(c, UnivariateRational):
        if c.den.degree() == 0:
            return _latex_scalar(c.pretty())
        ns, ds = c.pretty().split("/(", 1)
        return r"\frac{%s}{%s}" % (_latex_scalar(ns.strip("()")), _latex_scalar(ds[:-1]))
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return r"%s\frac{%d}{%d}" % (sign, abs(c.numerator), c.denominator)


def to_latex(poly: XPolynomial) -> str:
    if not poly.terms:
        return "0"
    out = []
    for exps, c in poly.sorted_terms():
        mono = " ".join(
            f"x_{{{i + 1}}}" + (f"^{{{e}}}" if e > 1 else "") for i, e in enumerate(exps) if e
        )
        cs = _latex_coeff(c)
        compound = any(op in cs.lstrip("-") for op in ("+", "-")) and not cs.startswith(r"\frac")
        if not mono:
            out.append(cs)
        elif cs == "1":
            out.append(mono)
        elif cs == "-1":
            out.append("-" + mono)
        else:
            out.append((f"\\left({cs}\\right)" if compound else cs) + " " + mono)
    s = out[0]
    for term in out[1:]:
        s += " - " + term[1:] if term.startswith("-") else " + " + term
    return s


def render(poly: XPolynomial, fmt: str, extra=None) -> str:
    if fmt == "json":
        return to_json(poly, extra)
    if fmt == "latex":
        return to_latex(poly)
    if fmt == "text":
        return to_text(poly)
    raise ValueError(f"unknown format {fmt!r}")


def render_value(value, fmt: str) -> str:
    if fmt == "json":
        params = ["q", "t"] if isinstance(value, CoeffField) else ["theta"]
        num, den = coeff_parts(value)
        return json.dumps({"parameters": params, "value": {"num": num, "den": den}}, sort_keys=True)
    if fmt == "latex":
        return _latex_coeff(value)
    return value.pretty() if hasattr(value, "pretty") else str(value)
