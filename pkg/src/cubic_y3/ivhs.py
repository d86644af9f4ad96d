"""Jacobian-ring linear maps of a cubic surface and the rank of its
infinitesimal variation of Hodge structure.

All maps are exact rational matrices with rows indexed by the codomain basis
and columns by the domain basis, so column k is the image of the k-th domain
basis vector.  Symmetric powers use :func:`polyring.monomials` order
(``x0^d`` first).  Tensor products are ordered lexicographically with the
first factor outermost; ``V + V`` lists the first summand first.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import fieldlin
from .polyring import CubicSurface, MultiPoly, is_smooth, monomials, probe_points


class SymBasis:
    """Monomial basis of ``Sym^d V`` for ``V = span(x0..x3)``."""

    def __init__(self, d: int) -> None:
        self.d = d
        self.monos = monomials(4, d)
        self.index = {e: k for k, e in enumerate(self.monos)}

    @property
    def dim(self) -> int:
        return len(self.monos)

    def labels(self) -> list[str]:
        out = []
        for e in self.monos:
            s = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            out.append(s or "1")
        return out

    def vector(self, P: MultiPoly) -> list[Fraction]:
        vec = [Fraction(0)] * self.dim
        for e, c in P.terms.items():
            if sum(e) != self.d:
                raise ValueError(f"polynomial is not homogeneous of degree {self.d}")
            vec[self.index[e]] += c
        return vec

    def element(self, k: int) -> MultiPoly:
        return MultiPoly(4, {self.monos[k]: 1})


@lru_cache(maxsize=None)
def sym_basis(d: int) -> SymBasis:
    return SymBasis(d)


class DualBasis:
    """``x0^v .. x3^v``."""

    dim = 4

    def labels(self) -> list[str]:
        return [f"x{i}^v" for i in range(4)]


def tensor_labels(*factors) -> list[str]:
    out = [""]
    for f in factors:
        out = [a + ("(x)" if a else "") + b for a in out for b in f.labels()]
    return out


def sum_labels(a, b) -> list[str]:
    return [f"{x}(+)0" for x in a.labels()] + [f"0(+){x}" for x in b.labels()]


@dataclass
class LinearMap:
    name: str
    domain: list[str]
    codomain: list[str]
    matrix: list[list[Fraction]] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.matrix) != len(self.codomain) or any(len(r) != len(self.domain) for r in self.matrix):
            raise ValueError(f"{self.name}: matrix shape does not match its bases")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.codomain), len(self.domain)

    def rank(self) -> int:
        return fieldlin.rank(self.matrix)

    def column(self, k: int) -> list[Fraction]:
        return [r[k] for r in self.matrix]

    def __matmul__(self, other: LinearMap) -> LinearMap:
        if self.domain != other.codomain:
            raise ValueError(f"cannot compose {self.name} after {other.name}")
        return LinearMap(
            f"{self.name}.{other.name}",
            other.domain,
            self.codomain,
            fieldlin.matmul(self.matrix, other.matrix),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.matrix == other.matrix
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "domain": self.domain,
            "codomain": self.codomain,
            "entries": [[str(Fraction(x)) for x in r] for r in self.matrix],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _from_columns(name, domain, codomain, cols) -> LinearMap:
    rows = [list(r) for r in zip(*cols)] if cols else [[] for _ in codomain]
    return LinearMap(name, domain, codomain, rows)


def _outer(a: list, b: list) -> list:
    return [x * y for x in a for y in b]


def _add(a: list, b: list) -> list:
    return [x + y for x, y in zip(a, b)]


def _zeros(n: int) -> list[Fraction]:
    return [Fraction(0)] * n


def _x(i: int) -> MultiPoly:
    return MultiPoly.var(4, i)


def _unit(n: int, k: int) -> list[Fraction]:
    v = _zeros(n)
    v[k] = Fraction(1)
    return v


def _partials(F: MultiPoly):
    d1 = [F.partial(i) for i in range(4)]
    d2 = [[d1[i].partial(j) for j in range(4)] for i in range(4)]
    return d1, d2


V = sym_basis(1)
S2 = sym_basis(2)
S3 = sym_basis(3)
VD = DualBasis()


def build_nu(F: MultiPoly) -> LinearMap:
    """``x_j^v (x) A -> A dF/dx_j`` from ``V^v (x) V`` to ``Sym^3 V``."""
    d1, _ = _partials(F)
    cols = []
    for j in range(4):
        for a in range(4):
            cols.append(S3.vector(_x(a) * d1[j]))
    return _from_columns("nu", tensor_labels(VD, V), S3.labels(), cols)


def build_delta() -> LinearMap:
    """``G -> sum_i x_i (x) dG/dx_i`` from ``Sym^3 V`` to ``V (x) Sym^2 V``."""
    cols = []
    for k in range(S3.dim):
        G = S3.element(k)
        vec = _zeros(4 * S2.dim)
        for i in range(4):
            vec = _add(vec, _outer(_unit(4, i), S2.vector(G.partial(i))))
        cols.append(vec)
    return _from_columns("delta", S3.labels(), tensor_labels(V, S2), cols)


def build_delta_nu(F: MultiPoly) -> LinearMap:
    """``x_j^v (x) A -> A (x) dF/dx_j + sum_i x_i (x) A d2F/dx_i dx_j``."""
    d1, d2 = _partials(F)
    cols = []
    for j in range(4):
        for a in range(4):
            vec = _outer(_unit(4, a), S2.vector(d1[j]))
            for i in range(4):
                vec = _add(vec, _outer(_unit(4, i), S2.vector(_x(a) * d2[i][j])))
            cols.append(vec)
    return _from_columns("delta_nu", tensor_labels(VD, V), tensor_labels(V, S2), cols)


def build_alpha() -> LinearMap:
    """``A + B -> sum_i (x_i (x) x_i^v (x) A + B (x) x_i^v (x) x_i)``."""
    cols = []
    for a in range(4):
        vec = _zeros(64)
        for i in range(4):
            vec = _add(vec, _outer(_outer(_unit(4, i), _unit(4, i)), _unit(4, a)))
        cols.append(vec)
    for b in range(4):
        vec = _zeros(64)
        for i in range(4):
            vec = _add(vec, _outer(_outer(_unit(4, b), _unit(4, i)), _unit(4, i)))
        cols.append(vec)
    return _from_columns("alpha", sum_labels(V, V), tensor_labels(V, VD, V), cols)


def build_beta(F: MultiPoly) -> LinearMap:
    """``A + B -> sum_i (dF/dx_i (x) A x_i + B x_i (x) dF/dx_i)``."""
    d1, _ = _partials(F)
    cols = []
    for a in range(4):
        vec = _zeros(100)
        for i in range(4):
            vec = _add(vec, _outer(S2.vector(d1[i]), S2.vector(_x(a) * _x(i))))
        cols.append(vec)
    for b in range(4):
        vec = _zeros(100)
        for i in range(4):
            vec = _add(vec, _outer(S2.vector(_x(b) * _x(i)), S2.vector(d1[i])))
        cols.append(vec)
    return _from_columns("beta", sum_labels(V, V), tensor_labels(S2, S2), cols)


def build_nu1(F: MultiPoly) -> LinearMap:
    """``A (x) x_j^v (x) B -> AB (x) dF/dx_j + sum_i A x_i (x) B d2F/dx_i dx_j``."""
    d1, d2 = _partials(F)
    cols = []
    for a in range(4):
        for j in range(4):
            for b in range(4):
                A, B = _x(a), _x(b)
                vec = _outer(S2.vector(A * B), S2.vector(d1[j]))
                for i in range(4):
                    if d2[i][j]:
                        vec = _add(vec, _outer(S2.vector(A * _x(i)), S2.vector(B * d2[i][j])))
                cols.append(vec)
    return _from_columns("nu1", tensor_labels(V, VD, V), tensor_labels(S2, S2), cols)


def build_delta1() -> LinearMap:
    """``A (x) B -> sum_i A x_i (x) dB/dx_i`` from ``V (x) Sym^3 V``."""
    cols = []
    for a in range(4):
        for k in range(S3.dim):
            B = S3.element(k)
            vec = _zeros(100)
            for i in range(4):
                dB = B.partial(i)
                if dB:
                    vec = _add(vec, _outer(S2.vector(_x(a) * _x(i)), S2.vector(dB)))
            cols.append(vec)
    return _from_columns("delta1", tensor_labels(V, S3), tensor_labels(S2, S2), cols)


def build_one_tensor_nu(F: MultiPoly) -> LinearMap:
    """``1 (x) nu``: ``A (x) x_j^v (x) B -> A (x) B dF/dx_j``."""
    d1, _ = _partials(F)
    cols = []
    for a in range(4):
        for j in range(4):
            for b in range(4):
                cols.append(_outer(_unit(4, a), S3.vector(_x(b) * d1[j])))
    return _from_columns("1(x)nu", tensor_labels(V, VD, V), tensor_labels(V, S3), cols)


def alpha_to_beta_transform() -> LinearMap:
    """``T`` on ``V + V`` with ``nu1 . alpha = beta . T``: ``(A, B) -> (2A, A + 3B)``."""
    m = [[Fraction(0)] * 8 for _ in range(8)]
    for i in range(4):
        m[i][i] = Fraction(2)
        m[4 + i][i] = Fraction(1)
        m[4 + i][4 + i] = Fraction(3)
    labels = sum_labels(V, V)
    return LinearMap("T", labels, labels, m)


def _hstack(*mats):
    return [sum((list(m[r]) for m in mats), []) for r in range(len(mats[0]))]


def same_image(f: LinearMap, g: LinearMap) -> bool:
    if f.codomain != g.codomain:
        return False
    r = fieldlin.rank(_hstack(f.matrix, g.matrix))
    return r == f.rank() == g.rank()


def image_contained(f: LinearMap, g: LinearMap) -> bool:
    """Whether ``im f`` is a subspace of ``im g``."""
    return fieldlin.rank(_hstack(g.matrix, f.matrix)) == g.rank()


@dataclass(frozen=True)
class IVHSResult:
    rank_nu: int
    rank_nu1: int
    rank_delta1: int
    ivhs_rank: int
    nu1_image_in_delta1: bool
    smooth: bool
    warnings: tuple[str, ...] = ()


def ivhs_rank(F: MultiPoly) -> int:
    """``dim(im delta1 + im nu1) - dim im nu1``."""
    nu1 = build_nu1(F)
    d1 = _delta1()
    return fieldlin.rank(_hstack(d1.matrix, nu1.matrix)) - nu1.rank()


@lru_cache(maxsize=1)
def _delta1() -> LinearMap:
    return build_delta1()


def ivhs_report(F: MultiPoly) -> IVHSResult:
    warnings = []
    X = CubicSurface(F)
    probe_ok = X.smoothness_probe(probe_points()).passed
    smooth = probe_ok and is_smooth(F)
    if not smooth:
        warnings.append("surface failed the smoothness check; ranks may drop")
    nu1 = build_nu1(F)
    d1 = _delta1()
    r_nu1 = nu1.rank()
    r_d1 = d1.rank()
    r_sum = fieldlin.rank(_hstack(d1.matrix, nu1.matrix))
    return IVHSResult(
        rank_nu=build_nu(F).rank(),
        rank_nu1=r_nu1,
        rank_delta1=r_d1,
        ivhs_rank=r_sum - r_nu1,
        nu1_image_in_delta1=r_sum == r_d1,
        smooth=smooth,
        warnings=tuple(warnings),
    )


def euler_vector() -> list[Fraction]:
    """``sum_i x_i^v (x) x_i`` in ``V^v (x) V``."""
    vec = _zeros(16)
    for i in range(4):
        vec = _add(vec, _outer(_unit(4, i), _unit(4, i)))
    return vec


def quotient_dims_report(F: MultiPoly) -> dict[str, int]:
    nu = build_nu(F)
    euler = euler_vector()
    dF = build_delta().matrix
    fvec = S3.vector(F)
    nv_vec = fieldlin.matvec(dF, fvec)  # sum_i x_i (x) dF/dx_i
    return {
        "tangent_quotient": 16 - (1 if any(euler) else 0),
        "normal_quotient": 40 - (1 if any(nv_vec) else 0),
        "coker_nu": S3.dim - nu.rank(),
    }


def apply(f: LinearMap, vec) -> list[Fraction]:
    return [Fraction(x) for x in fieldlin.matvec(f.matrix, vec)]


def permute_variables(F: MultiPoly, perm) -> MultiPoly:
    """``F(x_perm[0], ..., x_perm[3])``."""
    return F.compose([_x(p) for p in perm])
