"""Dense integer matrix algorithms: Hermite and Smith normal forms, saturated
kernels, Bareiss determinants and invariants of integral symmetric forms.

Matrices are plain row-major lists of lists of Python ints.  Every routine
returns fresh lists and leaves its arguments untouched.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: IntMatrix) -> IntMatrix:
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _combine(rows, i, j, x, y, s, t):
    """rows[i], rows[j] <- x*rows[i] + y*rows[j], s*rows[i] + t*rows[j]."""
    ri, rj = rows[i], rows[j]
    rows[i] = [x * p + y * q for p, q in zip(ri, rj)]
    rows[j] = [s * p + t * q for p, q in zip(ri, rj)]


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  Pivots of
    ``h`` are positive and the entries above each pivot lie in
    ``[0, pivot)``; zero rows sit at the bottom.
    """
    if not m or not m[0]:
        raise ValueError("hnf needs a nonempty matrix")
    nrows, ncols = len(m), len(m[0])
    h = [list(map(int, r)) for r in m]
    u = identity(nrows)
    piv = 0
    for c in range(ncols):
        if piv == nrows:
            break
        for r in range(piv + 1, nrows):
            b = h[r][c]
            if b == 0:
                continue
            a = h[piv][c]
            if a != 0 and b % a == 0:
                q = b // a
                h[r] = [y - q * x for x, y in zip(h[piv], h[r])]
                u[r] = [y - q * x for x, y in zip(u[piv], u[r])]
                continue
            g, x, y = xgcd(a, b)
            s, t = -b // g, a // g
            _combine(h, piv, r, x, y, s, t)
            _combine(u, piv, r, x, y, s, t)
        p = h[piv][c]
        if p == 0:
            continue
        if p < 0:
            h[piv] = [-v for v in h[piv]]
            u[piv] = [-v for v in u[piv]]
            p = -p
        for r in range(piv):
            q = h[r][c] // p
            if q:
                h[r] = [y - q * x for x, y in zip(h[piv], h[r])]
                u[r] = [y - q * x for x, y in zip(u[piv], u[r])]
        piv += 1
    return h, u


def lattice_basis(vectors, dim: int | None = None) -> IntMatrix:
    """HNF basis of the Z-span of ``vectors`` (no transform is tracked).

    Vectors are inserted one at a time into a reduced echelon basis, which
    keeps entries small for long redundant generator lists.
    """
    vectors = [list(map(int, v)) for v in vectors]
    if dim is None:
        if not vectors:
            return []
        dim = len(vectors[0])
    basis: dict[int, list[int]] = {}
    for v in vectors:
        if len(v) != dim:
            raise ValueError("inconsistent vector length")
        c = 0
        while True:
            while c < dim and v[c] == 0:
                c += 1
            if c == dim:
                break
            row = basis.get(c)
            if row is None:
                if v[c] < 0:
                    v = [-x for x in v]
                basis[c] = v
                break
            a, b = row[c], v[c]
            if b % a == 0:
                q = b // a
                v = [y - q * x for x, y in zip(row, v)]
                continue
            g, x, y = xgcd(a, b)
            s, t = -b // g, a // g
            new_row = [x * p + y * q for p, q in zip(row, v)]
            v = [s * p + t * q for p, q in zip(row, v)]
            basis[c] = new_row
    cols = sorted(basis)
    # reduce entries above each pivot
    for k, c in enumerate(cols):
        p = basis[c][c]
        for c2 in cols[:k]:
            q = basis[c2][c] // p
            if q:
                basis[c2] = [y - q * x for x, y in zip(basis[c], basis[c2])]
    return [basis[c] for c in cols]


def echelon_coordinates(basis: IntMatrix, v) -> list[int] | None:
    """Integer coordinates of ``v`` in an echelon ``basis``; None if v is outside the span."""
    v = list(v)
    coords = []
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        for i in range(c):
            if v[i]:
                return None
        q, r = divmod(v[c], row[c])
        if r:
            return None
        coords.append(q)
        if q:
            v = [y - q * x for x, y in zip(row, v)]
    if any(v):
        return None
    return coords


def snf(m: IntMatrix) -> list[int]:
    """Nonzero Smith invariant factors ``d1 | d2 | ...`` of ``m``."""
    a = [list(map(int, r)) for r in m if r]
    diag: list[int] = []
    while a and a[0]:
        nz = [(abs(x), i, j) for i, r in enumerate(a) for j, x in enumerate(r) if x]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[0], a[pi] = a[pi], a[0]
        for r in a:
            r[0], r[pj] = r[pj], r[0]
        while True:
            p = a[0][0]
            dirty = False
            for i in range(1, len(a)):
                if a[i][0]:
                    q = a[i][0] // p
                    a[i] = [y - q * x for x, y in zip(a[0], a[i])]
                    if a[i][0]:
                        dirty = True
            for j in range(1, len(a[0])):
                if a[0][j]:
                    q = a[0][j] // p
                    for r in a:
                        r[j] -= q * r[0]
                    if a[0][j]:
                        dirty = True
            if dirty:
                nz = [(abs(a[i][0]), i, 0) for i in range(len(a)) if a[i][0]]
                nz += [(abs(a[0][j]), 0, j) for j in range(len(a[0])) if a[0][j]]
                _, pi, pj = min(nz)
                a[0], a[pi] = a[pi], a[0]
                for r in a:
                    r[0], r[pj] = r[pj], r[0]
                continue
            bad = next(
                (i for i in range(1, len(a)) if any(x % p for x in a[i][1:])), None
            )
            if bad is None:
                break
            a[0] = [x + y for x, y in zip(a[0], a[bad])]
        diag.append(abs(a[0][0]))
        a = [r[1:] for r in a[1:]]
    return diag


def kernel_saturated(m: IntMatrix) -> IntMatrix:
    """Basis (as rows, in HNF) of ``{x in Z^n : m @ x = 0}``.

    The basis comes from a unimodular transform, so the lattice it spans is
    saturated in Z^n.
    """
    if not m or not m[0]:
        return []
    n = len(m[0])
    h, u = hnf(transpose(m))
    kern = [u[i] for i in range(n) if not any(h[i])]
    return lattice_basis(kern, n) if kern else []


def det(m) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    if any(len(r) != n for r in a):
        raise ValueError("det needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m) -> int:
    """Rank over Q of an integer matrix (content-reduced elimination)."""
    rows = [list(map(int, r)) for r in m if any(r)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, len(rows)):
            e = rows[i][c]
            if e:
                new = [p * y - e * x for x, y in zip(rows[r], rows[i])]
                g = 0
                for x in new:
                    if x:
                        g = gcd(g, x)
                rows[i] = [x // g for x in new] if g > 1 else new
        r += 1
    return r


def is_unimodular(u: IntMatrix) -> bool:
    return abs(det(u)) == 1


def signature(gram) -> tuple[int, int]:
    """(positive, negative) inertia of a rational symmetric matrix.

    Exact congruence diagonalization: pivot on a nonzero diagonal entry when
    there is one; otherwise split off a 2x2 hyperbolic block.
    """
    a = [[Fraction(x) for x in r] for r in gram]
    pos = neg = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i] != 0), None)
        if k is not None:
            a[0], a[k] = a[k], a[0]
            for r in a:
                r[0], r[k] = r[k], r[0]
            p = a[0][0]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = []
            for i in range(1, n):
                f = a[i][0] / p
                rest.append([a[i][j] - f * a[0][j] for j in range(1, n)])
            a = rest
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j]), None)
        if pair is None:
            break
        i, j = pair
        order = [i, j] + [x for x in range(n) if x not in (i, j)]
        a = [[a[r][c] for c in order] for r in order]
        # block [[0, b], [b, 0]] has inverse [[0, 1/b], [1/b, 0]]
        b = a[0][1]
        pos += 1
        neg += 1
        rest = []
        for r in range(2, n):
            # row_r -= (a[r][0] * a[1][*] + a[r][1] * a[0][*]) / b
            f0, f1 = a[r][1] / b, a[r][0] / b
            rest.append([a[r][c] - f0 * a[0][c] - f1 * a[1][c] for c in range(2, n)])
        a = rest
    return pos, neg


@dataclass(frozen=True)
class SymFormInvariants:
    rank: int
    determinant: int
    signature: tuple[int, int]
    invariant_factors: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "rank": self.rank,
            "determinant": self.determinant,
            "signature": list(self.signature),
            "invariant_factors": list(self.invariant_factors),
        }


def is_symmetric(m) -> bool:
    n = len(m)
    return all(len(r) == n for r in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def radical_quotient(gram: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Split off the radical of an integral symmetric form.

    Returns ``(w, g)``: the rows of ``w`` project to a basis of
    ``Z^n / radical`` and ``g = w @ gram @ w.T`` is the nondegenerate form on
    that quotient.
    """
    n = len(gram)
    if n == 0 or not any(any(r) for r in gram):
        return [], []
    h, u = hnf(gram)
    w = [u[i] for i in range(n) if any(h[i])]
    return w, matmul(matmul(w, gram), transpose(w))


def sym_invariants(gram: IntMatrix) -> SymFormInvariants:
    """Rank, determinant, signature and Smith factors of ``gram`` modulo its radical."""
    if not is_symmetric(gram):
        raise ValueError("Gram matrix is not symmetric")
    _, g = radical_quotient(gram)
    return SymFormInvariants(
        rank=len(g),
        determinant=det(g),
        signature=signature(g),
        invariant_factors=tuple(snf(g)),
    )
