"""Linear algebra over an exact field (Fraction or Cyclotomic entries)."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import intmat


def _is_zero(x) -> bool:
    return not x


def _lift(m):
    return [[Fraction(x) if isinstance(x, int) else x for x in r] for r in m]


def rref(m):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    rows = _lift(m)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not _is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not _is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [y - f * x for x, y in zip(rows[r], rows[i])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m) -> int:
    """Rank of a matrix over Q or Q(w).

    Rational matrices are cleared of denominators row by row and handed to
    the fraction-free integer eliminator.
    """
    if not m:
        return 0
    if all(isinstance(x, (int, Fraction)) for r in m for x in r):
        return intmat.rank(integer_rows(m))
    return len(rref(m)[1])


def integer_rows(m) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for r in m:
        fr = [Fraction(x) for x in r]
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * d) for x in fr])
    return out


def det(m):
    """Determinant by Gaussian elimination over the entry field."""
    n = len(m)
    a = _lift(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(a[i][c])), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        p = a[c][c]
        result = result * p
        for i in range(c + 1, n):
            if not _is_zero(a[i][c]):
                f = a[i][c] / p
                a[i] = [y - f * x for x, y in zip(a[c], a[i])]
    return result


def solve(m, b):
    """One solution x of ``m x = b``, or None when the system is inconsistent."""
    aug = [list(r) + [v] for r, v in zip(m, b)]
    rows, pivots = rref(aug)
    ncols = len(m[0])
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, c in zip(rows, pivots):
        x[c] = r[-1]
    return x


def nullspace(m):
    """Basis of the right kernel of ``m`` (list of vectors)."""
    if not m:
        return []
    ncols = len(m[0])
    rows, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in zip(rows, pivots):
            v[c] = -r[f]
        basis.append(v)
    return basis


def matmul(a, b):
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(a, v):
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def identity(n: int):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
