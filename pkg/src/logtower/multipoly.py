"""Polynomials and rational functions in tower symbols over the constants.

An MPoly is a :class:`~logtower.poly.Poly` whose variables are tower
symbols (:class:`LogSym` or :class:`GenSym`) and whose coefficients are
constants.  RatExpr keeps num/den reduced with a monic denominator.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .constfield import Const, ConstVec, const_sort_key, const_text, make_const
from .errors import BothZero, ConstantInput, UnknownSymbol, ZeroDenominator, ZeroDivisor
from .gaussian import ONE, ZERO, GaussRat
from .poly import (
    DivisionError, Poly, divmod_poly, exact_div, gcd, grlex_keyfunc, var_id, var_obj,
)
from . import kernels as _k

MPoly = Poly

# ------------------------------------------------------------------ symbols


class LogSym:
    """The iterated logarithm ln(...ln(x + c1)... + cn); level 0 is x."""

    __slots__ = ("vec", "_h", "_key")

    def __init__(self, vec: ConstVec = ()):
        self.vec = tuple(make_const(c) for c in vec)
        self._h = hash(("log", self.vec))
        self._key = None

    @property
    def level(self) -> int:
        return len(self.vec)

    kind = "iterated-log"

    def sort_key(self):
        if self._key is None:
            self._key = (len(self.vec), tuple(const_sort_key(c) for c in self.vec), ())
        return self._key

    def __eq__(self, other):
        return isinstance(other, LogSym) and other.vec == self.vec

    def __hash__(self):
        return self._h

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"LogSym({str(self)!r})"

    def __str__(self):
        s = "x"
        for c in self.vec:
            if c:
                t = const_text(c)
                if t.startswith("-"):
                    t = const_text(-c)
                    s = f"{s}-{t}" if "+" not in t and "-" not in t else f"{s}-({t})"
                else:
                    s = f"{s}+{t}"
            s = f"ln({s})"
        return s


X = LogSym(())


class GenSym:
    """A declared tower symbol: antiderivative or exponential of an integral."""

    __slots__ = ("name", "kind", "index", "stage")

    def __init__(self, name: str, kind: str = "antiderivative", index: int = 0, stage: int = 1):
        if kind not in ("antiderivative", "exponential"):
            raise ValueError(f"unknown symbol kind {kind!r}")
        self.name = name
        self.kind = kind
        self.index = index
        self.stage = stage

    @property
    def level(self) -> int:
        return self.stage

    def sort_key(self):
        return (self.stage, (), (self.index, self.name))

    def __eq__(self, other):
        return isinstance(other, GenSym) and (other.name, other.kind) == (self.name, self.kind)

    def __hash__(self):
        return hash(("gen", self.name, self.kind))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"GenSym({self.name!r}, {self.kind!r})"

    def __str__(self):
        return self.name


def is_exponential(s) -> bool:
    return isinstance(s, GenSym) and s.kind == "exponential"


def sym(s) -> Poly:
    return Poly.var(s)


def const_poly(c) -> Poly:
    return Poly.const(make_const(c))


def symbols_of(p: Poly) -> set:
    return p.variables()


def sorted_syms(syms: Iterable) -> list:
    return sorted(syms, key=lambda s: s.sort_key())


# ---------------------------------------------------------------- poly ops

def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials")
    return gcd(a, b)


def partial(p: Poly, s) -> Poly:
    return p.partial(var_id(s))


def translate(p: Poly, shift: Mapping) -> Poly:
    """P(y1 + r1, ..., yn + rn)."""
    images = {}
    for s, c in shift.items():
        c = make_const(c)
        if c:
            images[var_id(s)] = Poly({((var_id(s), 1),): ONE, (): c})
    if not images:
        return p
    return p.substitute(images)


def scale_vars(p: Poly, scale: Mapping) -> Poly:
    """P(l1*e1, ..., lm*em): each monomial picks up prod l_i^k_i."""
    factors = {var_id(s): make_const(c) for s, c in scale.items()}
    out = {}
    for m, c in p.terms.items():
        f = c
        for v, e in m:
            l = factors.get(v)
            if l is not None:
                f = f * l ** e
        if f:
            out[m] = f
    return Poly(out)


def homogeneous_components(p: Poly, vars: Iterable) -> list[tuple[int, Poly]]:
    vids = {var_id(s) for s in vars}
    groups: dict[int, dict] = {}
    for m, c in p.terms.items():
        d = 0
        for v, e in m:
            if v in vids:
                d += e
        groups.setdefault(d, {})[m] = c
    if not groups:
        return [(0, Poly())]
    return [(d, Poly(groups[d])) for d in sorted(groups)]


def divides(a: Poly, b: Poly) -> tuple[bool, Poly | None]:
    """Does a divide b?  Returns (flag, quotient)."""
    if a.is_zero():
        raise ZeroDivisor("divisibility test with zero divisor")
    q, r = divmod_poly(b, a)
    if r.terms:
        return False, None
    return True, q


def split_by(p: Poly, vars: Iterable) -> dict[tuple, Poly]:
    """Group p by its monomials in ``vars``: {mono in vars: coefficient poly}."""
    vids = {var_id(s) for s in vars}
    out: dict[tuple, dict] = {}
    for m, c in p.terms.items():
        inner = tuple(t for t in m if t[0] in vids)
        outer = tuple(t for t in m if t[0] not in vids)
        out.setdefault(inner, {})[outer] = c
    return {m: Poly(t) for m, t in out.items()}


def mono_from(items: Mapping) -> tuple:
    """Monomial tuple from a {symbol: exponent} mapping."""
    return tuple(sorted((var_id(s), e) for s, e in items.items() if e))


def mono_items(m: tuple) -> dict:
    return {var_obj(v): e for v, e in m}


# ----------------------------------------------------------------- RatExpr


class RatExpr:
    """A reduced fraction num/den of MPolys; den is monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        if den is None:
            den = Poly({(): ONE})
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def of(v) -> "RatExpr":
        if isinstance(v, RatExpr):
            return v
        if isinstance(v, Poly):
            return RatExpr(v, None, reduced=True)
        if isinstance(v, (LogSym, GenSym)):
            return RatExpr(Poly.var(v), None, reduced=True)
        return RatExpr(const_poly(v), None, reduced=True)

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_const(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def symbols(self) -> set:
        return self.num.variables() | self.den.variables()

    def __eq__(self, other):
        if not isinstance(other, RatExpr):
            other = RatExpr.of(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self):
        return RatExpr(-self.num, self.den, reduced=True)

    def __add__(self, other):
        other = RatExpr.of(other)
        if self.den.is_one() and other.den.is_one():
            return RatExpr(self.num + other.num, self.den, reduced=True)
        if self.den == other.den:
            return RatExpr(self.num + other.num, self.den)
        if other.den.is_one():
            return RatExpr(self.num + other.num * self.den, self.den, reduced=True)
        if self.den.is_one():
            return RatExpr(self.num * other.den + other.num, other.den, reduced=True)
        g = gcd(self.den, other.den)
        if g.is_one():
            return RatExpr(self.num * other.den + other.num * self.den,
                           self.den * other.den)
        d1 = exact_div(self.den, g)
        d2 = exact_div(other.den, g)
        return RatExpr(self.num * d2 + other.num * d1, d1 * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-RatExpr.of(other))

    def __rsub__(self, other):
        return RatExpr.of(other) - self

    def __mul__(self, other):
        other = RatExpr.of(other)
        if self.den.is_one() and other.den.is_one():
            return RatExpr(self.num * other.num, self.den, reduced=True)
        # cross-cancel: both fractions are already reduced
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not n1.terms or not n2.terms:
            return RatExpr(Poly(), None, reduced=True)
        g1 = gcd(n1, d2) if not d2.is_one() else None
        g2 = gcd(n2, d1) if not d1.is_one() else None
        if g1 is not None and not g1.is_one():
            n1, d2 = exact_div(n1, g1), exact_div(d2, g1)
        if g2 is not None and not g2.is_one():
            n2, d1 = exact_div(n2, g2), exact_div(d1, g2)
        return RatExpr._monic(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RatExpr":
        if not self.num.terms:
            raise ZeroDenominator("inverse of zero")
        return RatExpr._monic(self.den, self.num)

    def __truediv__(self, other):
        other = RatExpr.of(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatExpr.of(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatExpr(self.num ** n, self.den ** n, reduced=True)

    @staticmethod
    def _monic(num: Poly, den: Poly) -> "RatExpr":
        lc = den.lead_coeff()
        if lc != ONE:
            inv = ONE / lc
            num, den = num.scale(inv), den.scale(inv)
        return RatExpr(num, den, reduced=True)

    def __repr__(self):
        return f"RatExpr({str(self)!r})"

    def __str__(self):
        from .frontend import format_ratexpr
        return format_ratexpr(self)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den.terms:
        raise ZeroDenominator("fraction with zero denominator")
    if not num.terms:
        return Poly(), Poly({(): ONE})
    if not den.is_const():
        g = gcd(num, den)
        if not g.is_one():
            num = exact_div(num, g)
            den = exact_div(den, g)
    lc = den.lead_coeff()
    if lc != ONE:
        inv = ONE / lc
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def reduce_fraction(num: Poly, den: Poly) -> RatExpr:
    return RatExpr(num, den)


def rat_translate(u: RatExpr, shift: Mapping) -> RatExpr:
    return RatExpr(translate(u.num, shift), translate(u.den, shift))


# --------------------------------------------------------------- derivation

DerivationTable = dict  # symbol -> RatExpr (log-derivative for exponentials)


def derivative_of_symbol(s, table: Mapping) -> RatExpr:
    if s == X and X not in table:
        return RatExpr.of(1)
    try:
        d = table[s]
    except KeyError:
        raise UnknownSymbol(f"no derivative declared for {s}", symbol=str(s)) from None
    d = RatExpr.of(d)
    if is_exponential(s):
        return d * RatExpr.of(s)
    return d


def poly_derivative(p: Poly, table: Mapping) -> RatExpr:
    out = RatExpr.of(0)
    for v in sorted(p.vids()):
        s = var_obj(v)
        dp = p.partial(v)
        out = out + RatExpr.of(dp) * derivative_of_symbol(s, table)
    return out


def apply_derivation(u, table: Mapping) -> RatExpr:
    """Derivative of u under the declared derivation, reduced."""
    u = RatExpr.of(u)
    dn = poly_derivative(u.num, table)
    if u.den.is_one():
        return dn
    dd = poly_derivative(u.den, table)
    return (dn * RatExpr.of(u.den) - RatExpr.of(u.num) * dd) / RatExpr.of(u.den ** 2)


# ------------------------------------------------------------ irreducibility


@dataclass(frozen=True)
class Irreducibility:
    verdict: str  # Irreducible | Reducible | Unknown
    factors: tuple | None = None
    note: str = ""


def irreducible_linear_check(p: Poly) -> Irreducibility:
    if p.is_zero() or p.is_const():
        raise ConstantInput("irreducibility of a constant")
    d = p.total_degree()
    if d == 1:
        return Irreducibility("Irreducible", (p.monic(),), "total degree 1")
    if d >= 3:
        return Irreducibility("Unknown", None, f"total degree {d} exceeds the decidable range")
    return _quadratic_check(p)


def _quadratic_check(p: Poly) -> Irreducibility:
    vids = sorted(p.vids())
    sq = [v for v in vids if p.degree(v) == 2]
    if not sq:
        # linear in some variable v: p = L*v + M splits iff gcd(L, M) is nonconstant
        v = vids[0]
        for v in vids:
            if p.degree(v) == 1:
                break
        cs = p.coeffs_in(v)
        g = gcd(cs.get(1, Poly()), cs.get(0, Poly()))
        if g.is_const():
            return Irreducibility("Irreducible", (p.monic(),), "primitive and linear in one variable")
        return Irreducibility("Reducible", (g, exact_div(p, g)), "common factor of the coefficients")
    v = sq[0]
    cs = p.coeffs_in(v)
    a = cs[2].const_value()
    b = cs.get(1, Poly())
    c = cs.get(0, Poly())
    disc = b * b - c.scale(a * 4)
    vp = Poly.from_vid(v)
    two_a = a * 2
    if disc.is_zero():
        root = b.scale(ONE / two_a)
        f = vp + root
        return Irreducibility("Reducible", (f, f), "perfect square")
    lc = disc.lead_coeff()
    normed = disc.scale(ONE / lc)
    s = poly_sqrt(normed)
    if s is None:
        return Irreducibility("Irreducible", (p.monic(),), "discriminant is not a square")
    k = lc.sqrt() if isinstance(lc, GaussRat) else None
    if k is None:
        return Irreducibility("Reducible", None, "splits only after adjoining a square root of a constant")
    s = s.scale(k)
    inv = ONE / two_a
    f1 = vp + (b - s).scale(inv)
    f2 = vp + (b + s).scale(inv)
    return Irreducibility("Reducible", (f1.scale(a), f2), "quadratic formula")


def poly_sqrt(p: Poly) -> Poly | None:
    """Square root of a polynomial with leading coefficient 1, or None."""
    if p.is_zero():
        return p
    keyf = grlex_keyfunc(p.vids())
    lm, lc = p.lead_term(keyf)
    if lc != ONE or any(e % 2 for _, e in lm):
        return None
    root = Poly({tuple((v, e // 2) for v, e in lm): ONE})
    lead_root = next(iter(root.terms))
    rem = p - root * root
    guard = len(p.terms) + 4
    while rem.terms and guard:
        guard -= 1
        m, c = rem.lead_term(keyf)
        t = _k.mono_div(m, lead_root)
        if t is None:
            return None
        term = Poly({t: c / 2})
        rem = rem - term * (root * 2 + term)
        root = root + term
        if rem.terms:
            m2, _ = rem.lead_term(keyf)
            if keyf(m2) > keyf(m):
                return None
    if rem.terms:
        return None
    return root
