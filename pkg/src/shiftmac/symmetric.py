"""Symmetric polynomials stored in the monomial symmetric basis."""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

from .algebra import ONE, CoeffField, XPolynomial
from .combinatorics import Partition

__all__ = ["SymPoly", "monomial_symmetric", "NotSymmetricError"]


class NotSymmetricError(ValueError):
    pass


@lru_cache(maxsize=None)
def _orbit(parts: tuple, n: int):
    padded = parts + (0,) * (n - len(parts))
    return tuple(sorted(set(permutations(padded)), reverse=True))


def monomial_symmetric(lam, n: int, coeff=ONE) -> XPolynomial:
    """m_lam in n variables (zero when lam has more than n parts)."""
    lam = Partition(lam)
    if len(lam) > n:
        return XPolynomial(n)
    return XPolynomial._raw(n, {e: coeff for e in _orbit(tuple(lam), n)})


class SymPoly:
    """Finite sum of c_lam m_lam in ``nvars`` variables."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        for lam, c in (coeffs or {}).items():
            lam = Partition(lam)
            if len(lam) > nvars:
                raise ValueError(f"{lam} does not fit in {nvars} variables")
            if c:
                self.coeffs[lam] = c

    @classmethod
    def from_xpoly(cls, p: XPolynomial, check: bool = True) -> "SymPoly":
        coeffs = {}
        for e, c in p.terms.items():
            if all(a >= b for a, b in zip(e, e[1:])):
                coeffs[Partition(e)] = c
        out = cls(p.nvars, coeffs)
        if check and out.to_xpoly() != p:
            raise NotSymmetricError("polynomial is not symmetric")
        return out

    def to_xpoly(self) -> XPolynomial:
        terms = {}
        for lam, c in self.coeffs.items():
            for e in _orbit(tuple(lam), self.nvars):
                terms[e] = c
        return XPolynomial._raw(self.nvars, terms)

    def __add__(self, other):
        res = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            s = res[lam] + c if lam in res else c
            if s:
                res[lam] = s
            else:
                res.pop(lam, None)
        return SymPoly(self.nvars, res)

    def __neg__(self):
        return SymPoly(self.nvars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SymPoly(self.nvars, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymPoly):
            return SymPoly.from_xpoly(self.to_xpoly() * other.to_xpoly(), check=False)
        return self.scale(other)

    __rmul__ = __mul__

    def map_coeffs(self, fn):
        return SymPoly(self.nvars, {k: fn(v) for k, v in self.coeffs.items()})

    def coeff(self, lam, default=None):
        return self.coeffs.get(Partition(lam), default)

    def leading(self):
        """Lex-largest partition present and its coefficient."""
        lam = max(self.coeffs)
        return lam, self.coeffs[lam]

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def sorted_items(self):
        return sorted(self.coeffs.items(), reverse=True)

    def __repr__(self):
        body = " + ".join(f"({c})*m[{lam.text()}]" for lam, c in self.sorted_items()) or "0"
        return f"SymPoly({self.nvars}, {body})"
