"""Exact rational linear algebra via fraction-free (Bareiss) elimination.

Rows are rescaled to integers once, then eliminated with the Bareiss update,
whose division by the previous pivot is exact over the integers.  This keeps
intermediate entries as single determinants instead of products of pivots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .multipoly import as_fraction


class Inconsistent(ValueError):
    """The linear system has no solution."""


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [as_fraction(x) for x in row]
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        out.append([int(f * den) for f in fracs])
    return out


def _echelon(mat: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Bareiss forward elimination on the leading ncols columns.

    Returns the eliminated matrix (trailing columns carried along) and the
    pivot column list.
    """
    m = len(mat)
    width = len(mat[0]) if m else 0
    pivots: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        pivot_row = next((i for i in range(r, m) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        for i in range(r + 1, m):
            if not any(mat[i][c:]):
                continue
            row_i = mat[i]
            row_r = mat[r]
            lead = row_i[c]
            pivot = row_r[c]
            for j in range(c, width):
                num = pivot * row_i[j] - lead * row_r[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
        prev = mat[r][c]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return mat, pivots


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a matrix with exactly-representable entries."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    mat = _integer_rows(rows)
    _, pivots = _echelon(mat, len(mat[0]))
    return len(pivots)


def solve_exact(a_rows: Sequence[Sequence], b: Sequence) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Solve A x = b exactly; return (one solution, nullspace basis).

    Raises Inconsistent when no solution exists.  Underdetermined systems get
    the particular solution with all free variables set to zero plus one basis
    vector of the nullspace per free column.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    if any(len(row) != n for row in a_rows) or len(b) != m:
        raise ValueError("inconsistent system dimensions")
    aug = _integer_rows([list(row) + [rhs] for row, rhs in zip(a_rows, b)])
    aug, pivots = _echelon(aug, n)
    rank = len(pivots)
    for i in range(rank, m):
        if all(v == 0 for v in aug[i][:n]) and aug[i][n] != 0:
            raise Inconsistent("zero row with nonzero right-hand side")
    free_cols = [c for c in range(n) if c not in pivots]

    def back_substitute(rhs_col: list[Fraction], free_values: dict[int, Fraction]) -> list[Fraction]:
        x = [Fraction(0)] * n
        for c, v in free_values.items():
            x[c] = v
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            total = rhs_col[i]
            for j in range(c + 1, n):
                if aug[i][j]:
                    total -= aug[i][j] * x[j]
            x[c] = Fraction(total, 1) / aug[i][c]
        return x

    rhs = [Fraction(aug[i][n]) for i in range(rank)]
    solution = back_substitute(rhs, {c: Fraction(0) for c in free_cols})
    nullspace = []
    zero_rhs = [Fraction(0)] * rank
    for fc in free_cols:
        values = {c: Fraction(int(c == fc)) for c in free_cols}
        nullspace.append(back_substitute(zero_rhs, values))
    return solution, nullspace
