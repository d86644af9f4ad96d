"""The quadratic field Q(w) generated by a primitive cube root of unity.

Elements are stored as ``a + b*w`` with rational ``a, b`` and reduced with
``w**2 = -1 - w``.  Plain ints and Fractions mix freely with Cyclotomic
values; a Cyclotomic with ``b == 0`` compares and hashes equal to its
rational part so that dictionaries keyed on coordinates stay consistent.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

_SCALARS = (int, Fraction)


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot coerce {x!r} to a rational")


class Cyclotomic:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0) -> None:
        self.a = _q(a)
        self.b = _q(b)

    @classmethod
    def coerce(cls, x) -> Cyclotomic:
        if isinstance(x, Cyclotomic):
            return x
        return cls(x, 0)

    def __repr__(self) -> str:
        return f"Cyclotomic({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*w"

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Cyclotomic):
            return self.a == other.a and self.b == other.b
        if isinstance(other, _SCALARS):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(-self.a, -self.b)

    def __pos__(self) -> Cyclotomic:
        return self

    def __add__(self, other) -> Cyclotomic:
        if isinstance(other, _SCALARS):
            return Cyclotomic(self.a + other, self.b)
        if isinstance(other, Cyclotomic):
            return Cyclotomic(self.a + other.a, self.b + other.b)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> Cyclotomic:
        if isinstance(other, _SCALARS):
            return Cyclotomic(self.a - other, self.b)
        if isinstance(other, Cyclotomic):
            return Cyclotomic(self.a - other.a, self.b - other.b)
        return NotImplemented

    def __rsub__(self, other) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other) -> Cyclotomic:
        if isinstance(other, _SCALARS):
            return Cyclotomic(self.a * other, self.b * other)
        if isinstance(other, Cyclotomic):
            a, b, c, d = self.a, self.b, other.a, other.b
            bd = b * d
            return Cyclotomic(a * c - bd, a * d + b * c - bd)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> Cyclotomic:
        """Complex conjugate, i.e. the Galois image under w -> w**2."""
        return Cyclotomic(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        a, b = self.a, self.b
        return a * a - a * b + b * b

    def inv(self) -> Cyclotomic:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conj()
        return Cyclotomic(c.a / n, c.b / n)

    def __truediv__(self, other) -> Cyclotomic:
        if isinstance(other, _SCALARS):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(w)")
            return Cyclotomic(self.a / other, self.b / other)
        if isinstance(other, Cyclotomic):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other) -> Cyclotomic:
        return Cyclotomic.coerce(other) * self.inv()

    def __pow__(self, n: int) -> Cyclotomic:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = Cyclotomic(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_json(self):
        return [str(self.a), str(self.b)]


OMEGA = Cyclotomic(0, 1)
CUBE_ROOTS = (Cyclotomic(1), OMEGA, OMEGA * OMEGA)


def field_value(x):
    """Parse a JSON coefficient: ``"p/q"`` or a pair ``["a", "b"]`` for a + b*w."""
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ValueError(f"expected a pair [a, b] for a + b*w, got {x!r}")
        return Cyclotomic(_q(x[0]), _q(x[1]))
    if isinstance(x, bool):
        raise ValueError(f"not a coefficient: {x!r}")
    if isinstance(x, (int, str, Fraction)):
        return _q(x)
    raise ValueError(f"not a coefficient: {x!r}")


def to_json_value(x):
    if isinstance(x, Cyclotomic):
        return x.to_json()
    return str(Fraction(x))


def simplify(x):
    """Collapse a rational-valued Cyclotomic to a Fraction."""
    if isinstance(x, Cyclotomic) and x.b == 0:
        return x.a
    return x
