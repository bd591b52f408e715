"""Gaussian elimination over an exact field (any type with + - * / and truthiness)."""
from __future__ import annotations


class SingularSystemError(ArithmeticError):
    pass


def solve(matrix, rhs):
    """Solve ``matrix @ x == rhs`` for a square system.

    ``matrix`` is a list of rows; entries are exact field elements and zero
    entries must be falsy.  Raises :class:`SingularSystemError` when no
    unique solution exists.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise ValueError("solve expects a square system")
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise SingularSystemError(f"no pivot in column {col}")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        prow = rows[col]
        inv = 1 / prow[col]
        for r in range(col + 1, n):
            row = rows[r]
            if not row[col]:
                continue
            f = row[col] * inv
            for k in range(col + 1, n + 1):
                if prow[k]:
                    row[k] = row[k] - f * prow[k]
            row[col] = row[col] - row[col]
    x = [None] * n
    for r in range(n - 1, -1, -1):
        row = rows[r]
        acc = row[n]
        for k in range(r + 1, n):
            if row[k]:
                acc = acc - row[k] * x[k]
        x[r] = acc / row[r]
    return x
