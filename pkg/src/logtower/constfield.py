"""The constant field Q(i)(atoms).

Atom-free constants are plain :class:`GaussRat` values.  Anything that
mentions an atom is an :class:`AtomFrac`, a reduced fraction of
polynomials in the atoms with a monic denominator.  Results that lose all
their atoms are demoted back to GaussRat, so the two representations never
overlap and structural equality is value equality.
"""
from __future__ import annotations

import re
import threading
from fractions import Fraction
from typing import Union

from .errors import AtomRelation, DivisionByZero, EmptyVector, OutsideConstantField
from .gaussian import I, ONE, ZERO, GaussRat
from .poly import Poly, format_poly, gcd, exact_div

__all__ = [
    "Atom", "AtomFrac", "Const", "ConstVec", "I", "ONE", "ZERO",
    "atom", "make_const", "const_arith", "const_sort_key", "const_text",
    "is_const", "vec_project", "vec_last",
]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Atom:
    """A free transcendental constant, written ``@name``."""

    __slots__ = ("name", "index")

    def __init__(self, name: str, index: int):
        self.name = name
        self.index = index

    def sort_key(self):
        return (-1, (), (self.index,))

    def __eq__(self, other):
        return isinstance(other, Atom) and other.name == self.name

    def __hash__(self):
        return hash(("atom", self.name))

    def __repr__(self):
        return f"Atom({self.name!r})"

    def __str__(self):
        return "@" + self.name


_registry: dict[str, Atom] = {}
_reg_lock = threading.Lock()


def atom(name: str, relation: str | None = None) -> Atom:
    """Look up or register an atom.  Relations among atoms are refused."""
    if relation is not None or "=" in name or "^" in name:
        raise AtomRelation(f"atom {name!r} may not carry an algebraic relation", atom=name)
    if not _NAME.match(name):
        raise AtomRelation(f"invalid atom name {name!r}", atom=name)
    a = _registry.get(name)
    if a is None:
        with _reg_lock:
            a = _registry.get(name)
            if a is None:
                a = Atom(name, len(_registry))
                _registry[name] = a
    return a


class AtomFrac:
    """num/den in Q(i)[atoms], reduced, den monic, at least one atom present."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: Poly, den: Poly):
        self.num = num
        self.den = den
        self._h = None

    @staticmethod
    def build(num: Poly, den: Poly) -> "Const":
        if not den.terms:
            raise DivisionByZero("constant with zero denominator")
        if not num.terms:
            return ZERO
        g = gcd(num, den)
        if not g.is_one():
            num = exact_div(num, g)
            den = exact_div(den, g)
        return AtomFrac._finish(num, den)

    @staticmethod
    def _finish(num: Poly, den: Poly) -> "Const":
        lc = den.lead_coeff()
        if lc != ONE:
            inv = ONE / lc
            num = num.scale(inv)
            den = den.scale(inv)
        if den.is_const():
            if num.is_const():
                return num.const_value()
            return AtomFrac(num, Poly({(): ONE}))
        return AtomFrac(num, den)

    @staticmethod
    def _parts(v) -> tuple[Poly, Poly]:
        if isinstance(v, AtomFrac):
            return v.num, v.den
        return Poly.const(GaussRat.coerce(v)), Poly({(): ONE})

    def __bool__(self):
        return True

    def __eq__(self, other):
        if isinstance(other, AtomFrac):
            return self.num == other.num and self.den == other.den
        return False

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.num, self.den))
        return self._h

    def __neg__(self):
        return AtomFrac(-self.num, self.den)

    def __add__(self, other):
        if isinstance(other, (GaussRat, int, Fraction)):
            if not other:
                return self
            return AtomFrac(self.num + self.den.scale(GaussRat.coerce(other)), self.den)
        if not isinstance(other, AtomFrac):
            return NotImplemented
        if self.den == other.den:
            return AtomFrac.build(self.num + other.num, self.den)
        return AtomFrac.build(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (GaussRat, int, Fraction, AtomFrac)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (GaussRat, int, Fraction)):
            if not other:
                return ZERO
            return AtomFrac(self.num.scale(GaussRat.coerce(other)), self.den)
        if not isinstance(other, AtomFrac):
            return NotImplemented
        return AtomFrac.build(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        return AtomFrac._finish(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (GaussRat, int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero constant")
            return AtomFrac(self.num.scale(ONE / GaussRat.coerce(other)), self.den)
        if not isinstance(other, AtomFrac):
            return NotImplemented
        return AtomFrac.build(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        if not isinstance(other, (GaussRat, int, Fraction)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return AtomFrac._finish(self.num ** n, self.den ** n) if n else ONE

    def is_one(self):
        return False

    def atoms(self) -> set:
        return self.num.variables() | self.den.variables()

    def sort_key(self):
        return (1, _poly_key(self.num), _poly_key(self.den))

    def __repr__(self):
        return f"AtomFrac({self.num!r}, {self.den!r})"

    def __str__(self):
        return const_text(self)


Const = Union[GaussRat, AtomFrac]
ConstVec = tuple


def is_const(v) -> bool:
    return isinstance(v, (GaussRat, AtomFrac))


def make_const(v) -> Const:
    """Coerce ints, Fractions, complex rationals, atoms, or atom names to Const."""
    if isinstance(v, (GaussRat, AtomFrac)):
        return v
    if isinstance(v, Atom):
        return AtomFrac(Poly.var(v), Poly({(): ONE}))
    if isinstance(v, str):
        if v.startswith("@"):
            return make_const(atom(v[1:]))
        if v == "i":
            return I
        try:
            return GaussRat.coerce(Fraction(v))
        except ValueError:
            raise OutsideConstantField(f"not a constant literal: {v!r}") from None
    if isinstance(v, float):
        # binary floats are not exact members of Q(i)(atoms)
        raise OutsideConstantField(f"inexact constant {v!r}; use a Fraction")
    try:
        return GaussRat.coerce(v)
    except TypeError:
        raise OutsideConstantField(f"cannot represent {v!r} as a constant") from None


def const_arith(a: Const, b: Const, op: str) -> Const:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZero("division by zero constant")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _poly_key(p: Poly):
    from .poly import var_key
    items = []
    for m, c in p.terms.items():
        items.append((tuple((var_key(v), e) for v, e in m), c.sort_key()))
    return tuple(sorted(items))


def const_sort_key(c: Const):
    if isinstance(c, GaussRat):
        return (0, c.sort_key(), ())
    return c.sort_key()


def const_text(c: Const) -> str:
    """Render a constant in the parser's literal syntax."""
    if isinstance(c, GaussRat):
        return str(c)
    num = format_poly(c.num)
    if c.den.is_one():
        return num
    den = format_poly(c.den)
    if len(c.num.terms) > 1:
        num = f"({num})"
    return f"{num}/({den})"


# ------------------------------------------------------------- vectors

def vec_project(v: ConstVec, k: int) -> ConstVec:
    if k < 0:
        raise ValueError("negative projection count")
    return tuple(v[: max(len(v) - k, 0)])


def vec_last(v: ConstVec) -> Const:
    if not v:
        raise EmptyVector("last coordinate of the empty vector")
    return v[-1]
