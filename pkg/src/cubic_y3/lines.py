"""Lines on cubic surfaces: the 27 Fermat lines over Q(w), intersections,
Eckardt points, the abstract Eckardt-free incidence graph, and the local
classification of a surface point by its tangent-plane section.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .exact import fieldlin
from .exact.cyclotomic import CUBE_ROOTS, field_value, simplify, to_json_value
from .polyring import (
    CubicSurface,
    MultiPoly,
    fermat_form,
    fi_sequence,
    gradient,
    hessian_det,
    linear_change,
)


def _norm(x):
    if isinstance(x, int):
        return Fraction(x)
    return simplify(x)


def normalize_point(p) -> tuple:
    """Scale a nonzero vector so that its first nonzero coordinate is 1."""
    p = [_norm(x) for x in p]
    lead = next((x for x in p if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(_norm(x / lead) for x in p)


def _rank(rows) -> int:
    return fieldlin.rank(rows)


class ProjLine:
    """A line in P^3 stored as the reduced row echelon basis of its two spanning points."""

    __slots__ = ("basis", "label")

    def __init__(self, p, q, label: str = "") -> None:
        rows, piv = fieldlin.rref([list(p), list(q)])
        if len(piv) != 2:
            raise ValueError("spanning points of a line must be distinct")
        self.basis = tuple(tuple(_norm(x) for x in r) for r in rows)
        self.label = label

    @property
    def points(self) -> tuple[tuple, tuple]:
        return self.basis

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjLine) and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        return f"ProjLine({self.basis[0]}, {self.basis[1]}{tag})"

    def contains_point(self, x) -> bool:
        return _rank([*self.basis, list(x)]) == 2

    def lies_on(self, F: MultiPoly) -> bool:
        """Whether the line is contained in ``F = 0`` (all four restriction coefficients vanish)."""
        p, q = self.basis
        t0, t1 = MultiPoly.gens(2)
        param = [t0 * a + t1 * b for a, b in zip(p, q)]
        return not F.compose(param)

    def to_json(self):
        return [[to_json_value(x) for x in pt] for pt in self.basis]

    @classmethod
    def from_json(cls, data, label: str = "") -> ProjLine:
        if not isinstance(data, list) or len(data) != 2:
            raise ValueError("a line is a pair of points")
        pts = []
        for pt in data:
            if not isinstance(pt, list) or len(pt) != 4:
                raise ValueError("a point has 4 coordinates")
            pts.append([field_value(x) for x in pt])
        return cls(pts[0], pts[1], label)


def restriction_vanishes(F: MultiPoly, L: ProjLine) -> bool:
    """Containment via the expansion polynomials ``F_i``.

    Writes the line through a point ``a`` with ``a0 != 0`` and a point ``b``
    with ``b0 = 0`` and checks ``F_i(a, b) = 0`` for ``i = 0..3``.  Lines in
    the plane ``x0 = 0`` are first moved by a coordinate permutation.
    """
    p, q = L.basis
    perm = None
    if not p[0] and not q[0]:
        k = next(i for i in range(4) if p[i] or q[i])
        perm = [k] + [i for i in range(4) if i != k]
        M = [[Fraction(int(perm[r] == c)) for r in range(4)] for c in range(4)]
        F = linear_change(F, M)
        p = tuple(p[i] for i in perm)
        q = tuple(q[i] for i in perm)
    if not p[0]:
        p, q = q, p
    a = p
    b = tuple(y - a[i] * q[0] / a[0] for i, y in enumerate(q))
    seq = fi_sequence(F)
    pt = tuple(a) + tuple(b[1:])
    return all(not f.evaluate(pt) for f in seq)


def line_intersection(L1: ProjLine, L2: ProjLine):
    """The common point of two distinct lines, or None when they are skew."""
    if L1 == L2:
        raise ValueError("line_intersection needs two distinct lines")
    p1, p2 = L1.basis
    q1, q2 = L2.basis
    # columns p1, p2, -q1, -q2; a kernel vector gives a p1 + b p2 = c q1 + d q2
    m = [[p1[i], p2[i], -q1[i], -q2[i]] for i in range(4)]
    kern = fieldlin.nullspace(m)
    if not kern:
        return None
    a, b = kern[0][0], kern[0][1]
    return normalize_point([a * x + b * y for x, y in zip(p1, p2)])


_ROOT_NAMES = ("1", "w", "w^2")


def fermat_lines() -> list[ProjLine]:
    """The 27 lines ``x_i + a x_j = 0 = x_k + b x_l`` on ``x0^3 + x1^3 + x2^3 + x3^3``."""
    lines = []
    for (i, j), (k, l) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
        for ai, alpha in enumerate(CUBE_ROOTS):
            for bi, beta in enumerate(CUBE_ROOTS):
                p = [Fraction(0)] * 4
                q = [Fraction(0)] * 4
                p[i], p[j] = alpha, Fraction(-1)
                q[k], q[l] = beta, Fraction(-1)
                label = f"x{i}+{_ROOT_NAMES[ai]}x{j},x{k}+{_ROOT_NAMES[bi]}x{l}"
                lines.append(ProjLine(p, q, label))
    return lines


def fermat_line_partition(index: int) -> tuple[tuple[int, int], tuple[int, int]]:
    return (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))[index // 9]


@dataclass(frozen=True)
class EckardtPoint:
    id: int
    lines: tuple[int, int, int]
    point: tuple | None = None


@dataclass
class IncidenceData:
    """Meeting relation and Eckardt data of a configuration of 27 lines."""

    n: int
    meets: list[list[bool]]
    eckardt: list[EckardtPoint] = field(default_factory=list)
    eckardt_on_line: dict[int, list[int]] = field(default_factory=dict)
    labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        for i in range(self.n):
            self.eckardt_on_line.setdefault(i, [])

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.meets[i][j]]

    def edge_count(self) -> int:
        return sum(self.meets[i][j] for i in range(self.n) for j in range(i + 1, self.n))

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if not self.meets[i][j]:
                    continue
                for k in range(j + 1, self.n):
                    if self.meets[i][k] and self.meets[j][k]:
                        out.append((i, j, k))
        return out

    def eckardt_between(self, i: int, j: int) -> int | None:
        """Id of the Eckardt point where lines i and j meet, if they meet at one."""
        for e in self.eckardt_on_line[i]:
            if j in self.eckardt[e].lines:
                return e
        return None

    def validate(self) -> None:
        n = self.n
        if len(self.meets) != n or any(len(r) != n for r in self.meets):
            raise ValueError("meets must be an n x n relation")
        for i in range(n):
            if self.meets[i][i]:
                raise ValueError(f"line {i} meets itself")
            for j in range(n):
                if self.meets[i][j] != self.meets[j][i]:
                    raise ValueError(f"meets is not symmetric at ({i}, {j})")
        if n == 27:
            for i in range(n):
                deg = sum(self.meets[i])
                if deg != 10:
                    raise ValueError(f"line {i} meets {deg} lines, expected 10")
        on_line: dict[int, list[int]] = {i: [] for i in range(n)}
        for k, e in enumerate(self.eckardt):
            if e.id != k:
                raise ValueError("Eckardt ids must be 0..m-1 in order")
            a, b, c = e.lines
            if len({a, b, c}) != 3:
                raise ValueError(f"Eckardt point {k} needs three distinct lines")
            for x, y in ((a, b), (a, c), (b, c)):
                if not self.meets[x][y]:
                    raise ValueError(f"lines {x}, {y} through Eckardt point {k} do not meet")
            for x in e.lines:
                on_line[x].append(k)
        for i in range(n):
            if sorted(on_line[i]) != sorted(self.eckardt_on_line.get(i, [])):
                raise ValueError(f"eckardt_on_line disagrees with the records for line {i}")
            if len(on_line[i]) > 2:
                raise ValueError(f"line {i} carries more than two Eckardt points")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "labels": list(self.labels),
            "meets": [[i, j] for i in range(self.n) for j in range(i + 1, self.n) if self.meets[i][j]],
            "eckardt": [
                {
                    "id": e.id,
                    "lines": list(e.lines),
                    "point": None if e.point is None else [to_json_value(x) for x in e.point],
                }
                for e in self.eckardt
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> IncidenceData:
        n = int(data["n"])
        meets = [[False] * n for _ in range(n)]
        for i, j in data["meets"]:
            meets[i][j] = meets[j][i] = True
        eck = []
        on_line: dict[int, list[int]] = {i: [] for i in range(n)}
        for rec in data.get("eckardt", []):
            pt = rec.get("point")
            pt = None if pt is None else tuple(field_value(x) for x in pt)
            e = EckardtPoint(int(rec["id"]), tuple(rec["lines"]), pt)
            eck.append(e)
            for x in e.lines:
                on_line[x].append(e.id)
        inc = cls(n, meets, eck, on_line, list(data.get("labels", [])))
        inc.validate()
        return inc


def eckardt_points(lines: list[ProjLine]) -> IncidenceData:
    """Incidence relation of a line set, grouping concurrent triples into Eckardt points."""
    n = len(lines)
    if len(set(lines)) != n:
        raise ValueError("lines must be pairwise distinct")
    meets = [[False] * n for _ in range(n)]
    through: dict[tuple, set[int]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            x = line_intersection(lines[i], lines[j])
            if x is None:
                continue
            meets[i][j] = meets[j][i] = True
            through.setdefault(x, set()).update((i, j))
    eck = []
    on_line: dict[int, list[int]] = {i: [] for i in range(n)}
    for x in sorted(through, key=lambda pt: sorted(through[pt])):
        ids = sorted(through[x])
        if len(ids) < 3:
            continue
        if len(ids) > 3:
            raise ValueError(f"{len(ids)} concurrent lines at {x}; impossible on a smooth cubic")
        e = EckardtPoint(len(eck), tuple(ids), x)
        eck.append(e)
        for k in ids:
            on_line[k].append(e.id)
    inc = IncidenceData(n, meets, eck, on_line, [L.label for L in lines])
    if n == 27:
        inc.validate()
    return inc


def generic_line_classes() -> list[tuple[str, tuple[int, ...]]]:
    """The 27 exceptional classes on the blow-up of P^2 in six points.

    Each class is ``(label, (h, e1..e6))`` in the basis where ``h^2 = 1`` and
    ``e_i^2 = -1``.
    """
    out = []
    for i in range(6):
        v = [0] * 7
        v[1 + i] = 1
        out.append((f"e{i + 1}", tuple(v)))
    for i, j in itertools.combinations(range(6), 2):
        v = [1] + [0] * 6
        v[1 + i] = v[1 + j] = -1
        out.append((f"f{i + 1}{j + 1}", tuple(v)))
    for i in range(6):
        v = [2] + [-1] * 6
        v[1 + i] = 0
        out.append((f"g{i + 1}", tuple(v)))
    return out


def picard_pairing(a, b) -> int:
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


def generic_incidence() -> IncidenceData:
    """Intersection graph of the 27 lines with no Eckardt points."""
    classes = generic_line_classes()
    n = len(classes)
    meets = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                meets[i][j] = picard_pairing(classes[i][1], classes[j][1]) == 1
    inc = IncidenceData(n, meets, [], {}, [c[0] for c in classes])
    inc.validate()
    return inc


def fermat_incidence() -> IncidenceData:
    return eckardt_points(fermat_lines())


class PointTag(Enum):
    TwoPoints = "TwoPoints"
    OnePoint = "OnePoint"
    WholeLine = "WholeLine"


@dataclass(frozen=True)
class PointClass:
    tag: PointTag
    quadratic: tuple  # (c200, c110, c020)
    cubic: tuple  # (c300, c210, c120, c030) of the tangent-plane cubic


def _complement_basis(p) -> list[list]:
    """Columns ``p, e_a, e_b, e_c`` of an invertible 4x4 matrix."""
    k = next(i for i, x in enumerate(p) if x)
    cols = [list(p)] + [[Fraction(int(r == c)) for r in range(4)] for c in range(4) if c != k]
    return [[cols[c][r] for c in range(4)] for r in range(4)]


def _binary_cubic_discriminant(a, b, c, d):
    # a x^3 + b x^2 y + c x y^2 + d y^3
    return b * b * c * c - 4 * a * c**3 - 4 * b**3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def normalize_at_point(X: CubicSurface, p) -> MultiPoly:
    """Coordinates with ``p = [1:0:0:0]``, tangent plane ``x3 = 0`` and ``F = x0^2 x3 + x0 Q(x1, x2) + C``.

    Raises ValueError when ``p`` is not a smooth point of ``X``.
    """
    F = X.F
    p = normalize_point(p)
    if F.evaluate(p):
        raise ValueError(f"point {p} is not on the surface")
    if not any(gradient(F, p)):
        raise ValueError(f"point {p} is a singular point of the surface")
    # move p to e0
    G = linear_change(F, _complement_basis(p))
    # the coefficient of x0^2 is a nonzero linear form l(x1, x2, x3)
    lin = [G.coeff((2,) + tuple(int(i == j) for j in range(3))) for i in range(3)]
    # choose new x1..x3 with l as the last coordinate: x = A^-1 x'
    k = next(i for i in range(3) if lin[i])
    rows = [[Fraction(int(i == c)) for c in range(3)] for i in range(3) if i != k]
    A = rows + [[_norm(v) for v in lin]]
    inv = _inverse(A)
    N = [[Fraction(int(r == c == 0)) for c in range(4)] for r in range(4)]
    for r in range(3):
        for c in range(3):
            N[1 + r][1 + c] = inv[r][c]
    G = linear_change(G, N)
    # complete the square against x0^2 x3: x0 -> x0 - (a x1 + b x2 + c x3) / 2
    a = G.coeff((1, 1, 0, 1))
    b = G.coeff((1, 0, 1, 1))
    c = G.coeff((1, 0, 0, 2))
    if a or b or c:
        x = MultiPoly.gens(4)
        shift = x[0] - (x[1] * a + x[2] * b + x[3] * c) * Fraction(1, 2)
        G = G.compose([shift, x[1], x[2], x[3]])
    return G


def _inverse(A):
    n = len(A)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    rows, piv = fieldlin.rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [r[n:] for r in rows]


def classify_point(X: CubicSurface, p) -> PointClass:
    """Type of the tangent-plane section of ``X`` at the smooth point ``p``.

    The section is a plane cubic singular at ``p``.  Its tangent cone is the
    binary quadratic ``c200 x1^2 + c110 x1 x2 + c020 x2^2``: two tangents give
    TwoPoints, a double tangent OnePoint.  When the quadratic vanishes the
    section is three lines through ``p`` (WholeLine, an Eckardt point).
    """
    G = normalize_at_point(X, p)
    q = (G.coeff((1, 2, 0, 0)), G.coeff((1, 1, 1, 0)), G.coeff((1, 0, 2, 0)))
    cub = (G.coeff((0, 3, 0, 0)), G.coeff((0, 2, 1, 0)), G.coeff((0, 1, 2, 0)), G.coeff((0, 0, 3, 0)))
    if any(q):
        disc = q[1] * q[1] - 4 * q[0] * q[2]
        tag = PointTag.TwoPoints if disc else PointTag.OnePoint
        return PointClass(tag, q, cub)
    if not _binary_cubic_discriminant(*cub):
        raise ValueError(
            f"tangent section at {tuple(p)} has a repeated line; not a 27-line Eckardt configuration"
        )
    return PointClass(PointTag.WholeLine, q, cub)


def branch_consistency(X: CubicSurface, p, hessian: MultiPoly | None = None) -> bool:
    """Whether 'p is off the Hessian' agrees with 'p classifies as TwoPoints'."""
    H = hessian_det(X.F) if hessian is None else hessian
    on_branch = not H.evaluate(normalize_point(p))
    return (classify_point(X, p).tag != PointTag.TwoPoints) == on_branch


def case2_surface() -> CubicSurface:
    """A smooth cubic whose point [1:0:0:0] has a double tangent (OnePoint)."""
    x0, x1, x2, x3 = MultiPoly.gens(4)
    return CubicSurface(x0 * x0 * x3 + x0 * x2 * x2 + x1 * x1 * x2 + x1**3 + x3**3)


def fermat_sample_points() -> list[tuple]:
    """Points of the Fermat cubic with coordinates in ``{0} + cube roots + negatives``.

    These are the points with coordinates in ``{0, +-1, +-w, +-w^2}``; all of
    them lie on the 27 lines.
    """
    vals = [Fraction(0)] + [_norm(s * r) for r in CUBE_ROOTS for s in (1, -1)]
    F = fermat_form()
    out = []
    for k in range(4):
        for rest in itertools.product(vals, repeat=3 - k):
            pt = (Fraction(0),) * k + (Fraction(1),) + rest
            if not F.evaluate(pt):
                out.append(pt)
    return out
