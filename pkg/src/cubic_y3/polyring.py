"""Exact multivariate polynomials over Q or Q(w), and cubic surfaces in P^3.

A :class:`MultiPoly` is a sparse map from exponent tuples to nonzero
coefficients.  Coefficients are Fractions or Cyclotomic values; the two mix
freely, and Cyclotomic values with no w-part are stored as Fractions.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .exact.cyclotomic import Cyclotomic, field_value, simplify, to_json_value
from .exact import fieldlin


def _clean(c):
    if isinstance(c, int):
        return Fraction(c)
    return simplify(c)


class MultiPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None) -> None:
        self.n = n
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not have {n} entries")
            if c:
                clean[e] = _clean(c)
        self.terms = clean

    @classmethod
    def constant(cls, n: int, c) -> MultiPoly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> MultiPoly:
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def gens(cls, n: int) -> list[MultiPoly]:
        return [cls.var(n, i) for i in range(n)]

    def __repr__(self) -> str:
        return f"MultiPoly({self.n}, {self.terms!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(
                f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k
            )
            c = self.terms[e]
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return self == MultiPoly.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.n != self.n:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.n, other)

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction, Cyclotomic)):
                return MultiPoly(self.n, {e: c * other for e, c in self.terms.items()})
            return NotImplemented
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MultiPoly:
        result = MultiPoly.constant(self.n, 1)
        for _ in range(k):
            result = result * self
        return result

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def coeff(self, e) -> Fraction | Cyclotomic:
        return self.terms.get(tuple(e), Fraction(0))

    def is_rational(self) -> bool:
        return all(not isinstance(c, Cyclotomic) for c in self.terms.values())

    def partial(self, i: int) -> MultiPoly:
        if not 0 <= i < self.n:
            raise IndexError(f"no variable x{i}")
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                e2 = list(e)
                e2[i] = k - 1
                out[tuple(e2)] = c * k
        return MultiPoly(self.n, out)

    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        if len(point) != self.n:
            raise ValueError("point has wrong length")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return _clean(total)

    def compose(self, polys: list[MultiPoly]) -> MultiPoly:
        """Substitute ``x_i -> polys[i]`` (all polys share one variable count)."""
        if len(polys) != self.n:
            raise ValueError("need one polynomial per variable")
        m = polys[0].n
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = polys[i] ** k
            return cache[key]

        total = MultiPoly(m)
        for e, c in self.terms.items():
            term = MultiPoly.constant(m, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def embed(self, m: int, positions=None) -> MultiPoly:
        """View as a polynomial in ``m >= n`` variables, x_i going to x_{positions[i]}."""
        positions = list(range(self.n)) if positions is None else list(positions)
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * m
            for i, k in zip(positions, e):
                e2[i] += k
            out[tuple(e2)] = c
        return MultiPoly(m, out)


def monomials(n: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``d`` in ``n`` variables, lexicographically descending
    (so ``x0^d`` comes first)."""
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, k + 1)

    rec([], d, 0)
    return out


def second_partials(F: MultiPoly) -> list[list[MultiPoly]]:
    d = [F.partial(i) for i in range(F.n)]
    return [[d[i].partial(j) for j in range(F.n)] for i in range(F.n)]


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def poly_det(m: list[list[MultiPoly]]) -> MultiPoly:
    """Leibniz expansion of the determinant of a square polynomial matrix."""
    n = len(m)
    nvars = m[0][0].n
    total = MultiPoly(nvars)
    for p in itertools.permutations(range(n)):
        term = MultiPoly.constant(nvars, _perm_sign(p))
        for i in range(n):
            entry = m[i][p[i]]
            if not entry:
                break
            term = term * entry
        else:
            total = total + term
    return total


def hessian_det(F: MultiPoly) -> MultiPoly:
    """Determinant of the matrix of second partials of ``F``."""
    if F.n != 4:
        raise ValueError("hessian_det expects a form in 4 variables")
    return poly_det(second_partials(F))


def _check_matrix(M, n: int):
    if len(M) != n or any(len(r) != n for r in M):
        raise ValueError(f"expected a {n}x{n} matrix")
    if not fieldlin.det(M):
        raise ValueError("linear change of coordinates needs an invertible matrix")


def linear_forms(M) -> list[MultiPoly]:
    """The linear forms ``(M x)_i``."""
    n = len(M)
    gens = MultiPoly.gens(n)
    out = []
    for row in M:
        f = MultiPoly(n)
        for c, g in zip(row, gens):
            if c:
                f = f + g * c
        out.append(f)
    return out


def linear_change(F: MultiPoly, M) -> MultiPoly:
    """``F(M x)``.  Changing by M and then by N equals changing by ``M N``."""
    _check_matrix(M, F.n)
    return F.compose(linear_forms(M))


def fi_sequence(F: MultiPoly) -> tuple[MultiPoly, MultiPoly, MultiPoly, MultiPoly]:
    """The polynomials ``F_0..F_3`` in variables ``(x0..x3, z1..z3)``.

    ``F_0 = F(x)`` and ``F_i = (1/i) sum_{j=1..3} z_j dF_{i-1}/dx_j``, so that
    restricting F to the line through ``a`` and ``(0, b1, b2, b3)`` gives
    ``F(a t0 + b t1) = sum_i F_i(a, b) t0^(3-i) t1^i``.
    """
    if F.n != 4 or not F.is_homogeneous(3):
        raise ValueError("fi_sequence expects a homogeneous cubic in 4 variables")
    f0 = F.embed(7)
    z = [MultiPoly.var(7, 4 + k) for k in range(3)]
    seq = [f0]
    for i in range(1, 4):
        prev = seq[-1]
        acc = MultiPoly(7)
        for j in range(1, 4):
            acc = acc + prev.partial(j) * z[j - 1]
        seq.append(acc * Fraction(1, i))
    return tuple(seq)


def gradient(F: MultiPoly, p) -> list:
    return [F.partial(i).evaluate(p) for i in range(F.n)]


@dataclass(frozen=True)
class ProbeResult:
    point: tuple
    on_surface: bool
    gradient_zero: bool

    @property
    def singular(self) -> bool:
        return self.on_surface and self.gradient_zero


@dataclass(frozen=True)
class ProbeReport:
    results: tuple[ProbeResult, ...]

    @property
    def passed(self) -> bool:
        """No probed point is singular.  This is evidence, not a proof."""
        return not any(r.singular for r in self.results)


class CubicSurface:
    """A cubic form in ``x0..x3`` with its coefficient field tag ("Q" or "Q(w)")."""

    __slots__ = ("F",)

    def __init__(self, F: MultiPoly) -> None:
        if F.n != 4:
            raise ValueError("a cubic surface needs a form in 4 variables")
        if not F:
            raise ValueError("the zero form does not define a surface")
        if not F.is_homogeneous(3):
            raise ValueError("the form is not homogeneous of degree 3")
        self.F = F

    @property
    def field(self) -> str:
        return "Q" if self.F.is_rational() else "Q(w)"

    def __eq__(self, other) -> bool:
        return isinstance(other, CubicSurface) and self.F == other.F

    def __hash__(self) -> int:
        return hash(self.F)

    def __repr__(self) -> str:
        return f"CubicSurface({self.F})"

    @classmethod
    def from_dict(cls, data: dict) -> CubicSurface:
        if not isinstance(data, dict):
            raise ValueError("surface data must be a JSON object of monomial keys")
        terms = {}
        for key, value in data.items():
            try:
                exps = tuple(int(p) for p in key.split(","))
            except ValueError:
                raise ValueError(f"key {key!r}: expected 'i,j,k,l' exponents") from None
            if len(exps) != 4 or min(exps) < 0 or sum(exps) != 3:
                raise ValueError(f"key {key!r}: need 4 nonnegative exponents summing to 3")
            if exps in terms:
                raise ValueError(f"key {key!r}: repeated monomial")
            try:
                terms[exps] = field_value(value)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"key {key!r}: bad coefficient {value!r} ({exc})") from None
        return cls(MultiPoly(4, terms))

    def to_dict(self) -> dict:
        return {
            ",".join(map(str, e)): to_json_value(c)
            for e, c in sorted(self.F.terms.items(), reverse=True)
        }

    @classmethod
    def from_json(cls, text: str) -> CubicSurface:
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def contains(self, p) -> bool:
        return not self.F.evaluate(tuple(p))

    def smoothness_probe(self, points) -> ProbeReport:
        return smoothness_probe(self, points)


def smoothness_probe(X: CubicSurface, points) -> ProbeReport:
    """Gradient check at each given point of ``X``.

    A point on X with vanishing gradient certifies that X is singular; a
    clean report only says the probed points are smooth.
    """
    results = []
    for p in points:
        p = tuple(p)
        on = X.contains(p)
        gz = on and not any(gradient(X.F, p))
        results.append(ProbeResult(p, on, gz))
    return ProbeReport(tuple(results))


def jacobian_degree5_rank(F: MultiPoly) -> int:
    """Rank of ``(G_0..G_3) -> sum G_i dF/dx_i`` from four copies of cubics to quintics."""
    cubics = monomials(4, 3)
    quintics = monomials(4, 5)
    index = {e: k for k, e in enumerate(quintics)}
    cols = []
    for i in range(4):
        d = F.partial(i)
        for m in cubics:
            col = [Fraction(0)] * len(quintics)
            for e, c in d.terms.items():
                col[index[tuple(a + b for a, b in zip(e, m))]] += c
            cols.append(col)
    return fieldlin.rank([list(r) for r in zip(*cols)])


def is_smooth(F: MultiPoly) -> bool:
    """Exact smoothness certificate for a cubic surface.

    The partials of a smooth cubic in 4 variables form a regular sequence, so
    the Jacobian ideal contains every quintic; at a singular point all of it
    vanishes.  Hence smooth <=> the degree-5 part of the ideal has full
    dimension 56.
    """
    return jacobian_degree5_rank(F) == comb(8, 3)


def fermat_form() -> MultiPoly:
    x = MultiPoly.gens(4)
    return x[0] ** 3 + x[1] ** 3 + x[2] ** 3 + x[3] ** 3


def fermat() -> CubicSurface:
    return CubicSurface(fermat_form())


def random_cubic(rng: random.Random, lo: int = -9, hi: int = 9) -> MultiPoly:
    """Cubic with independent uniform integer coefficients in ``[lo, hi]``."""
    return MultiPoly(4, {e: rng.randint(lo, hi) for e in monomials(4, 3)})


def probe_points() -> list[tuple]:
    """Small-height sample points used by smoothness probes."""
    vals = (-1, 0, 1)
    pts = []
    for p in itertools.product(vals, repeat=4):
        if any(p) and next(v for v in p if v) == 1:
            pts.append(tuple(Fraction(v) for v in p))
    return pts


def random_smooth_cubics(seed: int, count: int, lo: int = -9, hi: int = 9):
    """``count`` seeded random cubics that pass the probe and the exact certificate."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        F = random_cubic(rng, lo, hi)
        if not F:
            continue
        X = CubicSurface(F)
        if not X.smoothness_probe(probe_points()).passed:
            continue
        if not is_smooth(F):
            continue
        out.append(X)
    return out
