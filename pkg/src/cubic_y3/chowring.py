"""The Chow ring Z[s,t]/(t^4, s^3 + s^2 t + s t^2 + t^3) of the flag variety
of pointed lines in P^3, and the numerical invariants of the triple-contact
surface Y3 inside it.

Normal forms use the basis ``s^a t^b`` with ``a <= 2`` and ``b <= 3``; the
degree map sends the top class ``s^2 t^3`` to 1.
"""
from __future__ import annotations

from dataclasses import dataclass

TOP_GRADE = 5


def _reduce_terms(terms: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    work = [(k, v) for k, v in terms.items() if v]
    while work:
        (a, b), c = work.pop()
        if b >= 4:
            continue
        if a >= 3:
            # s^3 = -(s^2 t + s t^2 + t^3)
            for da, db in ((2, 1), (1, 2), (0, 3)):
                work.append(((a - 3 + da, b + db), -c))
            continue
        out[(a, b)] = out.get((a, b), 0) + c
    return {k: v for k, v in out.items() if v}


class ChowClass:
    __slots__ = ("terms",)

    def __init__(self, terms=None) -> None:
        self.terms = _reduce_terms({tuple(k): int(v) for k, v in (terms or {}).items()})

    @classmethod
    def monomial(cls, a: int, b: int, c: int = 1) -> ChowClass:
        return cls({(a, b): c})

    def __repr__(self) -> str:
        return f"ChowClass({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0])):
            mono = "".join(
                x + (f"^{k}" if k > 1 else "") for x, k in (("s", a), ("t", b)) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ChowClass({(0, 0): other})
        return isinstance(other, ChowClass) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> ChowClass:
        other = _coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ChowClass(out)

    __radd__ = __add__

    def __neg__(self) -> ChowClass:
        return ChowClass({k: -v for k, v in self.terms.items()})

    def __sub__(self, other) -> ChowClass:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> ChowClass:
        return _coerce(other) - self

    def __mul__(self, other) -> ChowClass:
        other = _coerce(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return ChowClass(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> ChowClass:
        result = ChowClass({(0, 0): 1})
        for _ in range(k):
            result = result * self
        return result

    def grades(self) -> set[int]:
        return {a + b for a, b in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def grade(self) -> int | None:
        g = self.grades()
        if len(g) > 1:
            raise ValueError("class is not homogeneous")
        return next(iter(g), None)


def _coerce(x) -> ChowClass:
    if isinstance(x, ChowClass):
        return x
    if isinstance(x, int):
        return ChowClass({(0, 0): x})
    raise TypeError(f"cannot use {x!r} as a Chow class")


S = ChowClass.monomial(1, 0)
T = ChowClass.monomial(0, 1)
ONE = ChowClass.monomial(0, 0)


def reduce(poly: dict[tuple[int, int], int]) -> ChowClass:
    """Normal form of ``sum c s^a t^b`` given as ``{(a, b): c}``."""
    return ChowClass(poly)


def degree(c: ChowClass) -> int:
    """Degree of a top-grade class, normalized by ``deg(s^2 t^3) = 1``."""
    if any(a + b != TOP_GRADE for a, b in c.terms):
        raise ValueError("degree is only defined on grade-5 classes")
    return c.terms.get((2, 3), 0)


def twisted_sym2_roots() -> tuple[ChowClass, ChowClass, ChowClass]:
    """Chern roots of the symmetric square of the rank-2 quotient bundle twisted by t.

    With quotient roots ``r1, r2`` (``r1 + r2 = s + t``, ``r1 r2 = s t``, so
    ``{r1, r2} = {s, t}``) the symmetric square has roots ``2 r1, r1 + r2,
    2 r2``; adding ``t`` to each gives ``2s + t, s + 2t, 3t``.
    """
    return (2 * S + T, S + 2 * T, 3 * T)


def elementary_symmetric(roots) -> tuple[ChowClass, ...]:
    r1, r2, r3 = roots
    return (r1 + r2 + r3, r1 * r2 + r1 * r3 + r2 * r3, r1 * r2 * r3)


def class_of_Y3() -> ChowClass:
    """Top Chern class of the twisted symmetric square: the class of Y3."""
    return elementary_symmetric(twisted_sym2_roots())[2]


@dataclass(frozen=True)
class NumericInvariants:
    K2: int
    Yinf_self: int


def verify_numeric_invariants() -> NumericInvariants:
    """``K^2 = deg(t^2 [Y3])`` and ``(Y_inf)^2 = deg((3s)^2 [Y3])``."""
    y3 = class_of_Y3()
    return NumericInvariants(
        K2=degree(T * T * y3),
        Yinf_self=degree((3 * S) ** 2 * y3),
    )
