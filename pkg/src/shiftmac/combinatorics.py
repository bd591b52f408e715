"""Partitions, reverse tableaux and the hook-type scalars built from them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import ONE, Q, T, CoeffField, qt_monomial

__all__ = [
    "Partition",
    "ReverseTableau",
    "parse_partition",
    "conjugate",
    "interlaces",
    "is_horizontal_strip",
    "is_vertical_strip",
    "partitions_of",
    "enumerate_partitions",
    "enumerate_reverse_tableaux",
    "dominates",
    "hook_H",
    "b_lambda",
    "truncate_last",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers (trailing zeros dropped)."""

    def __new__(cls, parts=()):
        if isinstance(parts, str):
            return parse_partition(parts)
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must weakly decrease: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"negative part in {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def padded(self, n: int):
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def squares(self):
        """Squares (i, j), 1-based, row by row."""
        return [(i, j) for i, row in enumerate(self, 1) for j in range(1, row + 1)]

    def contains(self, other) -> bool:
        return len(other) <= len(self) and all(a >= b for a, b in zip(self, other))

    def arm(self, s) -> int:
        return self[s[0] - 1] - s[1]

    def leg(self, s) -> int:
        return conjugate(self).part(s[1]) - s[0]

    @staticmethod
    def arm_colength(s) -> int:
        return s[1] - 1

    @staticmethod
    def leg_colength(s) -> int:
        return s[0] - 1

    def n_stat(self) -> int:
        """Sum of (i - 1) * mu_i."""
        return sum(i * p for i, p in enumerate(self))

    def text(self) -> str:
        return ",".join(map(str, self)) if self else "0"

    def __repr__(self):
        return f"Partition({self.text()})"


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0", "()", "[]"):
        return Partition(())
    try:
        parts = [int(p) for p in text.strip("()[]").split(",") if p.strip() != ""]
    except ValueError:
        raise ValueError(f"malformed partition {text!r}") from None
    return Partition(parts)


@lru_cache(maxsize=None)
def _conjugate(parts):
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1))


def conjugate(mu) -> Partition:
    return Partition(_conjugate(tuple(mu)))


def truncate_last(mu, n: int) -> Partition:
    """The first n - 1 parts of mu (mu read in n variables)."""
    return Partition(tuple(mu)[: n - 1])


def interlaces(nu, mu) -> bool:
    """True when mu_1 >= nu_1 >= mu_2 >= nu_2 >= ..."""
    nu, mu = Partition(nu), Partition(mu)
    if len(nu) > len(mu):
        return False
    for i in range(len(mu)):
        if not mu.part(i + 1) >= nu.part(i + 1) >= mu.part(i + 2):
            return False
    return True


def is_horizontal_strip(mu, nu) -> bool:
    """mu / nu has at most one square per column (nu inside mu)."""
    mu, nu = Partition(mu), Partition(nu)
    if not mu.contains(nu):
        return False
    cm, cn = conjugate(mu), conjugate(nu)
    return all(cm.part(j) - cn.part(j) <= 1 for j in range(1, len(cm) + 1))


def is_vertical_strip(mu, nu) -> bool:
    mu, nu = Partition(mu), Partition(nu)
    return mu.contains(nu) and all(mu.part(i) - nu.part(i) <= 1 for i in range(1, len(mu) + 1))


@lru_cache(maxsize=None)
def _partitions_of(size: int, max_part: int, max_len: int):
    if size == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for first in range(min(size, max_part), 0, -1):
        for rest in _partitions_of(size - first, first, max_len - 1):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(size: int, max_length: int | None = None):
    """Partitions of ``size`` in reverse-lex order, e.g. (2), (1,1)."""
    ml = size if max_length is None else max_length
    return [Partition(p) for p in _partitions_of(size, size, ml)]


def enumerate_partitions(max_size: int, max_length: int):
    """All partitions with |lambda| <= max_size and length <= max_length,
    ordered by size, then reverse-lex."""
    out = []
    for s in range(max_size + 1):
        out.extend(partitions_of(s, max_length))
    return out


def dominates(lam, mu) -> bool:
    """lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


@dataclass(frozen=True)
class ReverseTableau:
    """Filling with rows weakly decreasing and columns strictly decreasing."""

    shape: Partition
    entries: tuple  # tuple of rows

    def __getitem__(self, square):
        i, j = square
        return self.entries[i - 1][j - 1]

    def items(self):
        for i, row in enumerate(self.entries, 1):
            for j, v in enumerate(row, 1):
                yield (i, j), v

    def chain(self, max_entry: int):
        """Shapes mu^(k) = {s : T(s) >= k} for k = 1..max_entry + 1."""
        return [
            Partition([sum(1 for v in row if v >= k) for row in self.entries])
            for k in range(1, max_entry + 2)
        ]

    def is_valid(self) -> bool:
        rows = self.entries
        for row in rows:
            if any(a < b for a, b in zip(row, row[1:])):
                return False
        for i in range(1, len(rows)):
            if any(rows[i][j] >= rows[i - 1][j] for j in range(len(rows[i]))):
                return False
        return True


def _strips_below(mu: Partition):
    """All nu with mu / nu a horizontal strip."""
    bounds = [(mu.part(i + 2), mu[i]) for i in range(len(mu))]

    def rec(i):
        if i == len(bounds):
            yield ()
            return
        lo, hi = bounds[i]
        for v in range(hi, lo - 1, -1):
            for rest in rec(i + 1):
                yield (v,) + rest
    for nu in rec(0):
        yield Partition(nu)


def strips_below(mu):
    return list(_strips_below(Partition(mu)))


def enumerate_reverse_tableaux(mu, max_entry: int):
    """All reverse tableaux of shape mu with entries in 1..max_entry.

    Built from the outside in: the squares holding 1 form a horizontal strip
    on the rim, the squares holding 2 the next strip, and so on.
    """
    mu = Partition(mu)
    out = []

    def rec(shape, level, fill):
        if not shape:
            rows = [[0] * p for p in mu]
            for (i, j), v in fill.items():
                rows[i - 1][j - 1] = v
            out.append(ReverseTableau(mu, tuple(tuple(r) for r in rows)))
            return
        if level > max_entry or len(shape) > max_entry - level + 1:
            return
        for nu in _strips_below(shape):
            new = dict(fill)
            for i in range(1, len(shape) + 1):
                for j in range(nu.part(i) + 1, shape.part(i) + 1):
                    new[(i, j)] = level
            rec(nu, level + 1, new)

    rec(mu, 1, {})
    out.sort(key=lambda tb: tuple(-v for row in tb.entries for v in row))
    return out


def hook_H(mu) -> CoeffField:
    """t^(-2 n(mu)) q^(n(mu')) prod_s (q^(a+1) t^l - 1)."""
    mu = Partition(mu)
    val = qt_monomial(conjugate(mu).n_stat(), -2 * mu.n_stat())
    for s in mu.squares():
        val = val * (qt_monomial(mu.arm(s) + 1, mu.leg(s)) - 1)
    return val


def b_lambda(lam, swap: bool = False) -> CoeffField:
    """prod_s (1 - q^a t^(l+1)) / (1 - q^(a+1) t^l); ``swap`` exchanges q and t."""
    lam = Partition(lam)
    val = ONE
    for s in lam.squares():
        a, l = lam.arm(s), lam.leg(s)
        if swap:
            val = val * (1 - qt_monomial(l + 1, a)) / (1 - qt_monomial(l, a + 1))
        else:
            val = val * (1 - qt_monomial(a, l + 1)) / (1 - qt_monomial(a + 1, l))
    return val
