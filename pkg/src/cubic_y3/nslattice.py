"""Curve classes on the double cover Y of a cubic surface branched along the
Hessian curve, their intersection form, and invariants of the sublattices
they span.

Generators are ordered ``L+ (27), L- (27), E_e (one per Eckardt point)`` and
optionally ``D_0..D_3`` (the four branch components of the Fermat surface).
Classes are integer vectors in these formal coordinates; two classes are
equal in the Neron-Severi group when their difference pairs to zero with
every generator.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

from .exact import intmat
from .exact.intmat import SymFormInvariants
from .lines import IncidenceData


class GeneratorSet:
    def __init__(self, nlines: int, neckardt: int, with_d: bool) -> None:
        self.nlines = nlines
        self.neckardt = neckardt
        self.with_d = with_d

    @property
    def size(self) -> int:
        return 2 * self.nlines + self.neckardt + (4 if self.with_d else 0)

    def Lp(self, i: int) -> int:
        return i

    def Lm(self, i: int) -> int:
        return self.nlines + i

    def E(self, e: int) -> int:
        return 2 * self.nlines + e

    def D(self, k: int) -> int:
        if not self.with_d:
            raise KeyError("this generator set has no D classes")
        return 2 * self.nlines + self.neckardt + k

    def labels(self) -> list[str]:
        out = [f"L{i}+" for i in range(self.nlines)]
        out += [f"L{i}-" for i in range(self.nlines)]
        out += [f"E{e}" for e in range(self.neckardt)]
        if self.with_d:
            out += [f"D{k}" for k in range(4)]
        return out


class CurveClass:
    """Integer combination of generators."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        self.coeffs = tuple(int(c) for c in coeffs)

    @classmethod
    def zero(cls, n: int) -> CurveClass:
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int) -> CurveClass:
        v = [0] * n
        v[i] = 1
        return cls(v)

    def __add__(self, other: CurveClass) -> CurveClass:
        return CurveClass(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: CurveClass) -> CurveClass:
        return CurveClass(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> CurveClass:
        return CurveClass(-a for a in self.coeffs)

    def __mul__(self, k: int) -> CurveClass:
        return CurveClass(k * a for a in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, CurveClass) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"CurveClass({list(self.coeffs)})"


class GramModel:
    def __init__(self, gens: GeneratorSet, gram: list[list[int]], inc: IncidenceData) -> None:
        if not intmat.is_symmetric(gram) or len(gram) != gens.size:
            raise ValueError("Gram matrix must be symmetric of the generator count")
        self.gens = gens
        self.gram = gram
        self.inc = inc
        self._quotient = None

    @property
    def quotient(self) -> _Quotient:
        if self._quotient is None:
            self._quotient = _Quotient(self.gram)
        return self._quotient

    @property
    def size(self) -> int:
        return self.gens.size

    def pair(self, a: CurveClass, b: CurveClass) -> int:
        total = 0
        for i, x in enumerate(a.coeffs):
            if x:
                row = self.gram[i]
                total += x * sum(r * y for r, y in zip(row, b.coeffs) if y)
        return total

    def pairings(self, a: CurveClass) -> list[int]:
        """Pairing of ``a`` against every generator."""
        return [
            sum(row[j] * x for j, x in enumerate(a.coeffs) if x) for row in self.gram
        ]

    def in_radical(self, a: CurveClass) -> bool:
        return not any(self.pairings(a))

    def equal_in_ns(self, a: CurveClass, b: CurveClass) -> bool:
        return self.in_radical(a - b)

    def unit(self, i: int) -> CurveClass:
        return CurveClass.unit(self.size, i)

    def with_entry(self, i: int, j: int, value: int) -> GramModel:
        """Copy with one symmetric pair of entries replaced (for negative controls)."""
        g = [list(r) for r in self.gram]
        g[i][j] = g[j][i] = value
        return GramModel(self.gens, g, self.inc)

    def to_dict(self) -> dict:
        return {"labels": self.gens.labels(), "gram": self.gram}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def fermat_branch_membership(inc: IncidenceData) -> list[list[bool]]:
    """``[e][k]``: whether Eckardt point e lies on the Hessian component ``x_k = 0``."""
    out = []
    for e in inc.eckardt:
        if e.point is None:
            raise ValueError("D classes need Eckardt point coordinates")
        out.append([not e.point[k] for k in range(4)])
    return out


def build_gram(inc: IncidenceData, with_d: bool = False) -> GramModel:
    """Intersection form on the generators of Y.

    * ``L+ . L+`` and ``L- . L-`` are -3 on the diagonal and 0 otherwise;
    * ``L+ . L-`` of one line is ``2 - #(Eckardt points on it)``;
    * ``L1+ . L2-`` is 1 when the lines meet away from Eckardt points, else 0;
    * ``E . E = -2`` diagonal, ``L+- . E = [e in L]``;
    * ``D_k . D_l = -3 delta``, ``D . L+- = 0``, ``D_k . E = [e on x_k = 0]``.
    """
    inc.validate()
    n = inc.n
    m = len(inc.eckardt)
    gens = GeneratorSet(n, m, with_d)
    g = [[0] * gens.size for _ in range(gens.size)]

    def put(a, b, v):
        g[a][b] = v
        g[b][a] = v

    for i in range(n):
        put(gens.Lp(i), gens.Lp(i), -3)
        put(gens.Lm(i), gens.Lm(i), -3)
        put(gens.Lp(i), gens.Lm(i), 2 - len(inc.eckardt_on_line[i]))
        for j in range(i + 1, n):
            if inc.meets[i][j] and inc.eckardt_between(i, j) is None:
                put(gens.Lp(i), gens.Lm(j), 1)
                put(gens.Lm(i), gens.Lp(j), 1)
    for e in inc.eckardt:
        put(gens.E(e.id), gens.E(e.id), -2)
        for i in e.lines:
            put(gens.Lp(i), gens.E(e.id), 1)
            put(gens.Lm(i), gens.E(e.id), 1)
    if with_d:
        member = fermat_branch_membership(inc)
        for k in range(4):
            put(gens.D(k), gens.D(k), -3)
            for e in inc.eckardt:
                if member[e.id][k]:
                    put(gens.D(k), gens.E(e.id), 1)
    return GramModel(gens, g, inc)


def pullback_line(model: GramModel, i: int) -> CurveClass:
    """``phi^* L = L+ + L- + sum of E_e over Eckardt points e on L``."""
    v = [0] * model.size
    v[model.gens.Lp(i)] = 1
    v[model.gens.Lm(i)] = 1
    for e in model.inc.eckardt_on_line[i]:
        v[model.gens.E(e)] += 1
    return CurveClass(v)


def hyperplane_pullback(model: GramModel, triple) -> CurveClass:
    """Pullback of a plane section given by three pairwise meeting lines."""
    a, b, c = triple
    meets = model.inc.meets
    if len({a, b, c}) != 3 or not (meets[a][b] and meets[a][c] and meets[b][c]):
        raise ValueError(f"lines {triple} do not span a tritangent plane")
    return pullback_line(model, a) + pullback_line(model, b) + pullback_line(model, c)


def some_tritangent(inc: IncidenceData) -> tuple[int, int, int]:
    return inc.triangles()[0]


def lplus_sum(model: GramModel) -> CurveClass:
    v = [0] * model.size
    for i in range(model.inc.n):
        v[model.gens.Lp(i)] = 1
    return CurveClass(v)


def psi_hyperplane(model: GramModel, L0: int) -> CurveClass:
    """``3 phi^* L0 - L0+ + sum of L+ over the 10 lines meeting L0``."""
    c = 3 * pullback_line(model, L0) - model.unit(model.gens.Lp(L0))
    for j in model.inc.neighbors(L0):
        c = c + model.unit(model.gens.Lp(j))
    return c


def psi_multiplicity_form(model: GramModel, L0: int) -> CurveClass:
    """``2 L0+ + 3 L0- + 3 sum E_e (e on L0) + sum of L+ over lines meeting L0``."""
    g = model.gens
    v = [0] * model.size
    v[g.Lp(L0)] = 2
    v[g.Lm(L0)] = 3
    for e in model.inc.eckardt_on_line[L0]:
        v[g.E(e)] += 3
    for j in model.inc.neighbors(L0):
        v[g.Lp(j)] += 1
    return CurveClass(v)


def verify_multiplicities(model: GramModel, L0: int) -> bool:
    return psi_multiplicity_form(model, L0) == psi_hyperplane(model, L0)


@dataclass(frozen=True)
class RelationReport:
    psi_orthogonal_to_lplus: bool
    psi_independent_of_line: bool
    rel1: bool
    multiplicities: bool

    @property
    def rel2(self) -> bool:
        return self.psi_orthogonal_to_lplus and self.psi_independent_of_line

    @property
    def ok(self) -> bool:
        return self.rel1 and self.rel2 and self.multiplicities


def verify_relations(model: GramModel) -> RelationReport:
    """Check both divisor relations as radical identities, for every base line."""
    n = model.inc.n
    psis = [psi_hyperplane(model, i) for i in range(n)]
    orth = all(
        model.pair(psis[0], model.unit(model.gens.Lp(j))) == 0 for j in range(n)
    ) and all(model.pair(p, model.unit(model.gens.Lp(0))) == 0 for p in psis)
    indep = all(model.equal_in_ns(psis[0], p) for p in psis[1:])
    h = hyperplane_pullback(model, some_tritangent(model.inc))
    target = 3 * h + lplus_sum(model)
    rel1 = all(model.equal_in_ns(3 * p, target) for p in psis)
    mult = all(verify_multiplicities(model, i) for i in range(n))
    return RelationReport(orth, indep, rel1, mult)


class _Quotient:
    """Coordinates on ``Z^n / radical`` for a Gram model."""

    def __init__(self, gram: list[list[int]]) -> None:
        n = len(gram)
        h, u = intmat.hnf(gram)
        self.r = sum(1 for row in h if any(row))
        self.h = h[: self.r]
        w = u[: self.r]
        self.gram = intmat.matmul(intmat.matmul(w, gram), intmat.transpose(w))
        self.n = n
        self._source = gram

    def coords(self, c: CurveClass) -> list[int]:
        row = [sum(c.coeffs[i] * self._source[i][j] for i in range(self.n) if c.coeffs[i]) for j in range(self.n)]
        a = intmat.echelon_coordinates(self.h, row)
        if a is None:
            raise ArithmeticError("pairing vector outside the Gram row lattice")
        return a


class SpannedLattice:
    """The image of a list of classes in ``Z^n / radical`` with the induced form."""

    def __init__(self, model: GramModel, generators: list[CurveClass], name: str = "") -> None:
        self.model = model
        self.generators = list(generators)
        self.name = name
        q = model.quotient
        self._q = q
        self.basis = intmat.lattice_basis([q.coords(c) for c in self.generators], q.r)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def gram(self) -> list[list[int]]:
        b = self.basis
        if not b:
            return []
        return intmat.matmul(intmat.matmul(b, self._q.gram), intmat.transpose(b))

    def invariants(self) -> SymFormInvariants:
        return lattice_invariants(self)

    def coordinates(self, c: CurveClass) -> list[int] | None:
        """Coordinates of ``c`` in this lattice's basis, or None when c is not in the span."""
        return intmat.echelon_coordinates(self.basis, self._q.coords(c))

    def contains(self, other: SpannedLattice) -> bool:
        return all(intmat.echelon_coordinates(self.basis, v) is not None for v in other.basis)


def lattice_invariants(S: SpannedLattice) -> SymFormInvariants:
    g = S.gram()
    if not g:
        return SymFormInvariants(0, 1, (0, 0), ())
    return SymFormInvariants(
        rank=len(g),
        determinant=intmat.det(g),
        signature=intmat.signature(g),
        invariant_factors=tuple(intmat.snf(g)),
    )


def quotient_torsion(M: SpannedLattice, A: SpannedLattice) -> list[int]:
    """Invariant factors (> 1) of ``span M / span A``; a 0 marks each free summand."""
    if M.model is not A.model:
        raise ValueError("lattices live in different Gram models")
    rows = []
    for v in A.basis:
        c = intmat.echelon_coordinates(M.basis, v)
        if c is None:
            raise ValueError("the sublattice is not contained in the lattice")
        rows.append(c)
    d = intmat.snf(rows) if rows else []
    free = M.rank - len(d)
    return [x for x in d if x != 1] + [0] * free


def index_of(M: SpannedLattice, A: SpannedLattice) -> int:
    """``[M : A]`` for a finite-index sublattice."""
    t = quotient_torsion(M, A)
    if 0 in t:
        raise ValueError("sublattice has infinite index")
    out = 1
    for x in t:
        out *= x
    return out


def overlattice_law(M: SpannedLattice, A: SpannedLattice) -> bool:
    """``det A = det M * [M : A]^2``."""
    return lattice_invariants(A).determinant == lattice_invariants(M).determinant * index_of(M, A) ** 2


def lplus_lattice(model: GramModel) -> SpannedLattice:
    return SpannedLattice(model, [model.unit(model.gens.Lp(i)) for i in range(model.inc.n)], "sum Z L+")


def line_lattice(model: GramModel) -> SpannedLattice:
    """Span of all ``L+`` and ``L-``."""
    g = model.gens
    gens = [model.unit(g.Lp(i)) for i in range(model.inc.n)]
    gens += [model.unit(g.Lm(i)) for i in range(model.inc.n)]
    return SpannedLattice(model, gens, "L+- span")


def line_and_eckardt_lattice(model: GramModel) -> SpannedLattice:
    g = model.gens
    gens = line_lattice(model).generators
    gens += [model.unit(g.E(e)) for e in range(g.neckardt)]
    return SpannedLattice(model, gens, "L+-, E span")


def full_lattice(model: GramModel) -> SpannedLattice:
    return SpannedLattice(model, [model.unit(i) for i in range(model.size)], "all generators")


def prim_plus_Lplus(model: GramModel) -> SpannedLattice:
    """Differences of line pullbacks together with all ``L+``."""
    n = model.inc.n
    pulls = [pullback_line(model, i) for i in range(n)]
    gens = [pulls[i] - pulls[j] for i, j in combinations(range(n), 2)]
    gens += [model.unit(model.gens.Lp(i)) for i in range(n)]
    return SpannedLattice(model, gens, "prim + L+")


def full_phi_plus_Lplus(model: GramModel) -> SpannedLattice:
    """Plane-section pullback, all line pullbacks and all ``L+``."""
    n = model.inc.n
    gens = [hyperplane_pullback(model, some_tritangent(model.inc))]
    gens += [pullback_line(model, i) for i in range(n)]
    gens += [model.unit(model.gens.Lp(i)) for i in range(n)]
    return SpannedLattice(model, gens, "phi* H2 + L+")


def curve_graph_connected(model: GramModel, indices) -> bool:
    """Connectivity of the graph on ``indices`` with edges where the pairing is positive."""
    indices = list(indices)
    if not indices:
        return True
    seen = {indices[0]}
    stack = [indices[0]]
    pool = set(indices)
    while stack:
        a = stack.pop()
        for b in pool - seen:
            if model.gram[a][b] > 0:
                seen.add(b)
                stack.append(b)
    return seen == pool
