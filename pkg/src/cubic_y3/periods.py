"""Period lattices built from a rank-5 symplectic Z[w]-module.

H^1 has basis ``e0..e9 = v0..v4, w v0..w v4`` with the alternating form
``<v_i, w v_i> = d_i``, ``d = (-1, 1, 1, 1, 1)``, and all other basis
pairings zero.  Its polarization is ``theta = sum d_i v_i ^ w v_i`` and the
second cohomology of the Fano-type surface is ``Z tau + wedge^2 H^1`` with
``tau = theta / 2``.  The cup form is ``deg(theta^3/3! ^ a ^ b)`` with the
orientation fixed by ``deg(theta^5/5!) = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial

from .exact import intmat
from .exact.intmat import SymFormInvariants

RANK = 10
SIGNS = (-1, 1, 1, 1, 1)
PAIRS: list[tuple[int, int]] = list(combinations(range(RANK), 2))
PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}
TOP = tuple(range(RANK))


def v(i: int) -> int:
    return i


def wv(i: int) -> int:
    return 5 + i


def omega_action() -> list[list[int]]:
    """Matrix (columns are images) of multiplication by w on H^1."""
    m = [[0] * RANK for _ in range(RANK)]
    for i in range(5):
        m[wv(i)][v(i)] = 1  # v_i -> w v_i
        m[v(i)][wv(i)] = -1  # w v_i -> -v_i - w v_i
        m[wv(i)][wv(i)] = -1
    return m


def alt_form() -> list[list[int]]:
    j = [[0] * RANK for _ in range(RANK)]
    for i, d in enumerate(SIGNS):
        j[v(i)][wv(i)] = d
        j[wv(i)][v(i)] = -d
    return j


# exterior algebra elements: dicts from increasing index tuples to coefficients


def _wedge_sign(a: tuple, b: tuple) -> int:
    """Sign of the shuffle sorting ``a + b``; 0 when they share an index."""
    if set(a) & set(b):
        return 0
    inversions = sum(1 for x in a for y in b if x > y)
    return -1 if inversions % 2 else 1


def wedge(x: dict, y: dict) -> dict:
    out: dict = {}
    for a, c in x.items():
        for b, d in y.items():
            s = _wedge_sign(a, b)
            if s:
                k = tuple(sorted(a + b))
                out[k] = out.get(k, 0) + s * c * d
    return {k: c for k, c in out.items() if c}


def as_form(coeffs) -> dict:
    """Exterior-algebra dict of a bivector given by :data:`PAIRS` coordinates."""
    return {PAIRS[k]: Fraction(c) for k, c in enumerate(coeffs) if c}


def bivector(a: int, b: int) -> list[int]:
    """PAIRS coordinates of ``e_a ^ e_b``."""
    vec = [0] * len(PAIRS)
    if a < b:
        vec[PAIR_INDEX[(a, b)]] = 1
    else:
        vec[PAIR_INDEX[(b, a)]] = -1
    return vec


def theta() -> list[int]:
    """``theta = sum_{a<b} J_ab e_a ^ e_b``."""
    j = alt_form()
    return [j[a][b] for a, b in PAIRS]


def tau() -> list[Fraction]:
    return [Fraction(x, 2) for x in theta()]


def _scaled_power(k: int) -> dict:
    t = as_form(theta())
    out = {(): Fraction(1)}
    for _ in range(k):
        out = wedge(out, t)
    return {key: c / factorial(k) for key, c in out.items()}


_THETA3 = _scaled_power(3)
_THETA4 = _scaled_power(4)
# sign of the top coefficient of theta^5/5! in the basis e0 ^ ... ^ e9
ORIENTATION = _scaled_power(5)[TOP]


def theta5_degree() -> Fraction:
    return _scaled_power(5)[TOP] / ORIENTATION


def cup_form(a, b) -> Fraction:
    """``deg(theta^3/3! ^ a ^ b)`` for bivectors given by PAIRS coordinates."""
    top = wedge(wedge(_THETA3, as_form(a)), as_form(b))
    return top.get(TOP, Fraction(0)) / ORIENTATION


def alt_bridge_form(x, y) -> Fraction:
    """``deg(theta^4/4! ^ x ^ y)`` for vectors of H^1."""
    xv = {(i,): Fraction(c) for i, c in enumerate(x) if c}
    yv = {(i,): Fraction(c) for i, c in enumerate(y) if c}
    top = wedge(wedge(_THETA4, xv), yv)
    return top.get(TOP, Fraction(0)) / ORIENTATION


@lru_cache(maxsize=1)
def _pair_gram() -> tuple[tuple[Fraction, ...], ...]:
    n = len(PAIRS)
    g = [[Fraction(0)] * n for _ in range(n)]
    for k1 in range(n):
        for k2 in range(k1, n):
            if set(PAIRS[k1]) & set(PAIRS[k2]):
                continue
            val = cup_form(bivector(*PAIRS[k1]), bivector(*PAIRS[k2]))
            g[k1][k2] = g[k2][k1] = val
    return tuple(tuple(r) for r in g)


def pair_gram() -> list[list[Fraction]]:
    """Cup form on the 45 basis bivectors ``e_a ^ e_b`` (a < b)."""
    return [list(r) for r in _pair_gram()]


def cup(x, y) -> Fraction:
    """Cup form of two PAIRS-coordinate vectors via the cached basis Gram."""
    g = _pair_gram()
    total = Fraction(0)
    for i, a in enumerate(x):
        if a:
            row = g[i]
            for j, b in enumerate(y):
                if b and row[j]:
                    total += a * row[j] * b
    return total


def galois_on_pairs() -> list[list[int]]:
    """Matrix (columns are images) of the induced w action on wedge^2 H^1."""
    w = omega_action()
    n = len(PAIRS)
    m = [[0] * n for _ in range(n)]
    for k, (a, b) in enumerate(PAIRS):
        ia = {(i,): w[i][a] for i in range(RANK) if w[i][a]}
        ib = {(i,): w[i][b] for i in range(RANK) if w[i][b]}
        for key, c in wedge(ia, ib).items():
            m[PAIR_INDEX[key]][k] += c
    return m


_P0 = PAIR_INDEX[(v(0), wv(0))]


@dataclass(frozen=True)
class H2Lattice:
    """``Z tau + wedge^2 H^1`` with basis ``tau`` then every ``e_a ^ e_b`` except ``v0 ^ w v0``.

    ``vectors[k]`` gives the k-th basis element in PAIRS coordinates (tau has
    half-integral entries); ``gram`` is the cup form and ``galois`` the w
    action (columns are images), both in lattice coordinates.
    """

    vectors: list[list[Fraction]]
    gram: list[list[int]]
    galois: list[list[int]]

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def coordinates(self, x) -> list[int]:
        """Lattice coordinates of a PAIRS vector; raises if x is outside the lattice."""
        x = [Fraction(c) for c in x]
        t = -2 * x[_P0]  # tau has coefficient -1/2 on v0 ^ w v0
        tv = tau()
        out = [t]
        for k in range(len(PAIRS)):
            if k == _P0:
                continue
            out.append(x[k] - t * tv[k])
        if any(c.denominator != 1 for c in out):
            raise ValueError("vector is not in Z tau + wedge^2 H^1")
        return [int(c) for c in out]

    def vector(self, coords) -> list[Fraction]:
        out = [Fraction(0)] * len(PAIRS)
        for c, vec in zip(coords, self.vectors):
            if c:
                out = [a + c * b for a, b in zip(out, vec)]
        return out


@lru_cache(maxsize=1)
def h2S_lattice() -> H2Lattice:
    vectors = [tau()]
    for k in range(len(PAIRS)):
        if k != _P0:
            vec = [Fraction(0)] * len(PAIRS)
            vec[k] = Fraction(1)
            vectors.append(vec)
    n = len(vectors)
    gram = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            val = cup(vectors[i], vectors[j])
            if val.denominator != 1:
                raise ArithmeticError("cup form is not integral on the lattice")
            gram[i][j] = gram[j][i] = int(val)
    w = galois_on_pairs()
    lat = H2Lattice(vectors, gram, [])
    cols = []
    for vec in vectors:
        img = [sum(w[r][c] * vec[c] for c in range(len(PAIRS)) if vec[c]) for r in range(len(PAIRS))]
        cols.append(lat.coordinates(img))
    return H2Lattice(vectors, gram, intmat.transpose(cols))


def _gram_of(rows, gram) -> list[list[int]]:
    return intmat.matmul(intmat.matmul(rows, gram), intmat.transpose(rows))


def _invariants(g) -> SymFormInvariants:
    return SymFormInvariants(
        rank=len(g),
        determinant=intmat.det(g),
        signature=intmat.signature(g),
        invariant_factors=tuple(intmat.snf(g)),
    )


@dataclass(frozen=True)
class SubLattice:
    """Sublattice of :func:`h2S_lattice` given by basis rows in lattice coordinates."""

    basis: list[list[int]]
    gram: list[list[int]]

    def invariants(self) -> SymFormInvariants:
        return _invariants(self.gram)


@lru_cache(maxsize=1)
def galois_invariants() -> SubLattice:
    """Saturated fixed sublattice of the w action."""
    lat = h2S_lattice()
    n = lat.rank
    a = [[lat.galois[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    k = intmat.kernel_saturated(a)
    return SubLattice(k, _gram_of(k, lat.gram))


@lru_cache(maxsize=1)
def prim_invariants_lattice() -> SubLattice:
    """Orthogonal complement of tau inside the fixed sublattice."""
    lat = h2S_lattice()
    inv = galois_invariants()
    tau_coords = [1] + [0] * (lat.rank - 1)
    row = [sum(b[i] * lat.gram[i][j] * tau_coords[j] for i in range(lat.rank) for j in range(lat.rank)) for b in inv.basis]
    k = intmat.kernel_saturated([row])
    basis = intmat.matmul(k, inv.basis)
    return SubLattice(basis, _gram_of(basis, lat.gram))


def prim_invariants() -> SymFormInvariants:
    return prim_invariants_lattice().invariants()


def explicit_pair(i: int, j: int) -> tuple[list[int], list[int]]:
    """``(v_i^v_j + wv_i^wv_j + wv_i^v_j,  v_i^v_j + wv_i^wv_j + v_i^wv_j)``."""
    base = [x + y for x, y in zip(bivector(v(i), v(j)), bivector(wv(i), wv(j)))]
    a = [x + y for x, y in zip(base, bivector(wv(i), v(j)))]
    b = [x + y for x, y in zip(base, bivector(v(i), wv(j)))]
    return a, b


def explicit_pair_gram(i: int, j: int) -> list[list[int]]:
    a, b = explicit_pair(i, j)
    g = [[cup(a, a), cup(a, b)], [cup(b, a), cup(b, b)]]
    return [[int(x) for x in r] for r in g]


def is_galois_fixed(x) -> bool:
    w = galois_on_pairs()
    img = [sum(w[r][c] * x[c] for c in range(len(x)) if x[c]) for r in range(len(x))]
    return img == list(x)


# block models


def root_lattice_A(n: int) -> list[list[int]]:
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def scaled(g, c):
    return [[c * x for x in r] for r in g]


def block_sum(*blocks) -> list[list]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, r in enumerate(b):
            for j, x in enumerate(r):
                out[off + i][off + j] = x
        off += len(b)
    return out


def invariant_model(c=1) -> list[list]:
    """``c * (1 + (-1)^4 + A2^4 + (-A2)^6)``."""
    a2 = root_lattice_A(2)
    blocks = [[[c]]] + [[[-c]]] * 4 + [scaled(a2, c)] * 4 + [scaled(a2, -c)] * 6
    return block_sum(*blocks)


def prim_model() -> list[list[int]]:
    """``(-A4) + A2^4 + (-A2)^6``."""
    a2 = root_lattice_A(2)
    return block_sum(scaled(root_lattice_A(4), -1), *([a2] * 4), *([scaled(a2, -1)] * 6))


def h2Z_model() -> list[list[int]]:
    """``3 + (-3)^4 + A2^4 + (-A2)^6``."""
    a2 = root_lattice_A(2)
    return block_sum([[3]], *([[[-3]]] * 4), *([a2] * 4), *([scaled(a2, -1)] * 6))


def h2Z_prim_model() -> list[list[int]]:
    """``(-3 A4) + A2^4 + (-A2)^6``."""
    a2 = root_lattice_A(2)
    return block_sum(scaled(root_lattice_A(4), -3), *([a2] * 4), *([scaled(a2, -1)] * 6))


def model_invariants(g) -> SymFormInvariants:
    return _invariants(g)


def _rational_det(g) -> Fraction:
    from .exact import fieldlin

    return Fraction(fieldlin.det(g))


@dataclass(frozen=True)
class ScalingLine:
    check: str
    expected: object
    computed: object

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def scaling_bridge_report(ns_prim_complement_det: int | None = None) -> list[ScalingLine]:
    """Determinant and signature bookkeeping relating the four block models.

    The fixed lattice scaled by 1/3 is the free part of the open-surface
    lattice, and ``det(cL) = c^rank det L`` links every scaled model.
    """
    inv = galois_invariants().invariants()
    third = Fraction(1, 3)
    lines = [
        ScalingLine("fixed lattice det = block model det", _rational_det(invariant_model()), Fraction(inv.determinant)),
        ScalingLine(
            "1/3-scaled fixed lattice det",
            _rational_det(invariant_model(third)),
            third ** inv.rank * inv.determinant,
        ),
        ScalingLine("H2(Z) model det", Fraction(3) ** 15, _rational_det(h2Z_model())),
        ScalingLine("H2(Z) prim model det", Fraction(5 * 3**14), _rational_det(h2Z_prim_model())),
        ScalingLine("1/3-scaled H2(Z) model det", Fraction(3) ** -10, third**25 * _rational_det(h2Z_model())),
        ScalingLine(
            "H2(Z) model signature",
            (9, 16),
            intmat.signature(h2Z_model()),
        ),
    ]
    if ns_prim_complement_det is not None:
        lines.append(
            ScalingLine(
                "|prim model det| = |det of NS span|",
                abs(ns_prim_complement_det),
                abs(int(_rational_det(h2Z_prim_model()))),
            )
        )
    return lines
