"""Gaussian rationals: exact arithmetic in Q(i)."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


class GaussRat:
    """The number (a + b*i) / d with integers a, b and d > 0 in lowest terms."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a: int = 0, b: int = 0, d: int = 1):
        if d == 0:
            raise ZeroDivisionError("GaussRat with zero denominator")
        if d < 0:
            a, b, d = -a, -b, -d
        if d != 1:
            g = gcd(gcd(a, b), d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "GaussRat":
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        obj.d = d
        return obj

    @classmethod
    def coerce(cls, v) -> "GaussRat":
        if isinstance(v, GaussRat):
            return v
        if isinstance(v, int):
            return cls._raw(v, 0, 1)
        if isinstance(v, Fraction):
            return cls._raw(v.numerator, 0, v.denominator)
        if isinstance(v, complex):
            re, im = Fraction(v.real), Fraction(v.imag)
            return cls.from_parts(re, im)
        raise TypeError(f"cannot coerce {type(v).__name__} to GaussRat")

    @classmethod
    def from_parts(cls, re, im=0) -> "GaussRat":
        re, im = Fraction(re), Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        return cls(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    @property
    def real(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.b, self.d)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0 and self.d == 1

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRat):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, int):
            return self.b == 0 and self.d == 1 and self.a == other
        if isinstance(other, Fraction):
            return self.b == 0 and Fraction(self.a, self.d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __neg__(self) -> "GaussRat":
        return GaussRat._raw(-self.a, -self.b, self.d)

    def __add__(self, other) -> "GaussRat":
        if not isinstance(other, GaussRat):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussRat.coerce(other)
        if self.d == other.d:
            return GaussRat(self.a + other.a, self.b + other.b, self.d)
        return GaussRat(self.a * other.d + other.a * self.d,
                        self.b * other.d + other.b * self.d, self.d * other.d)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussRat":
        if not isinstance(other, GaussRat):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussRat.coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "GaussRat":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return GaussRat.coerce(other) - self

    def __mul__(self, other) -> "GaussRat":
        if not isinstance(other, GaussRat):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussRat.coerce(other)
        a, b, c, e = self.a, self.b, other.a, other.b
        if b == 0 and e == 0:
            return GaussRat(a * c, 0, self.d * other.d)
        return GaussRat(a * c - b * e, a * e + b * c, self.d * other.d)

    __rmul__ = __mul__

    def inverse(self) -> "GaussRat":
        # d / (a + bi) = d (a - bi) / (a^2 + b^2)
        n = self.a * self.a + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRat(self.d * self.a, -self.d * self.b, n)

    def __truediv__(self, other) -> "GaussRat":
        if not isinstance(other, GaussRat):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = GaussRat.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other) -> "GaussRat":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "GaussRat":
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussRat._raw(1, 0, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "GaussRat":
        return GaussRat._raw(self.a, -self.b, self.d)

    def sort_key(self) -> tuple:
        return (Fraction(self.a, self.d), Fraction(self.b, self.d))

    def sqrt(self) -> "GaussRat | None":
        """A square root in Q(i), or None when there is none.

        Picks the root with positive real part, or positive imaginary part
        when the real part vanishes.
        """
        if not self:
            return self
        re, im = self.real, self.imag
        mod = _frac_sqrt(re * re + im * im)
        if mod is None:
            return None
        x = _frac_sqrt((mod + re) / 2)
        y = _frac_sqrt((mod - re) / 2)
        if x is None or y is None:
            return None
        if im < 0:
            y = -y
        root = GaussRat.from_parts(x, y)
        if root.a < 0 or (root.a == 0 and root.b < 0):
            root = -root
        return root

    def __repr__(self) -> str:
        return f"GaussRat({self.a}, {self.b}, {self.d})"

    def __str__(self) -> str:
        # literal syntax accepted by the expression parser
        re, im = self.real, self.imag
        if im == 0:
            return str(re)
        mag = abs(im)
        ims = "i" if mag == 1 else f"{mag}*i"
        if re == 0:
            return ims if im > 0 else f"{-mag}*i"
        return f"{re}{'-' if im < 0 else '+'}{ims}"


def _frac_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


ZERO = GaussRat._raw(0, 0, 1)
ONE = GaussRat._raw(1, 0, 1)
I = GaussRat._raw(0, 1, 1)
