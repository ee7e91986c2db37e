"""Sparse multivariate polynomials over an exact field.

Coefficients are GaussRat values or atom fractions (anything closed under
+, -, *, / with exact equality).  Variables are arbitrary hashable objects
exposing ``sort_key()``; they are interned to small integers so that
monomials stay cheap to hash and merge.
"""
from __future__ import annotations

import heapq
import threading
from typing import Iterable

from . import kernels as _k
from .gaussian import ONE, ZERO, GaussRat

# ---------------------------------------------------------------- variables

_lock = threading.Lock()
_ids: dict = {}
_objs: list = []
_keys: list = []


def var_id(obj) -> int:
    vid = _ids.get(obj)
    if vid is None:
        with _lock:
            vid = _ids.get(obj)
            if vid is None:
                vid = len(_objs)
                _objs.append(obj)
                _keys.append(obj.sort_key())
                _ids[obj] = vid
    return vid


def var_obj(vid: int):
    return _objs[vid]


def var_key(vid: int):
    return _keys[vid]


def mono_degree(m) -> int:
    return sum(e for _, e in m)


def order_asc(vids: Iterable[int]) -> list[int]:
    return sorted(vids, key=_keys.__getitem__)


def grlex_keyfunc(vids: Iterable[int]):
    """Graded lex key; the variable with the smallest sort key dominates."""
    order = order_asc(vids)
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)

    def key(m):
        dense = [0] * n
        deg = 0
        for v, e in m:
            dense[pos[v]] = e
            deg += e
        return (deg, tuple(dense))

    return key


class DivisionError(ArithmeticError):
    pass


# ------------------------------------------------------------------ Poly

class Poly:
    __slots__ = ("terms", "_h")

    def __init__(self, terms: dict | None = None):
        self.terms = terms if terms is not None else {}
        self._h = None

    # construction
    @staticmethod
    def const(c) -> "Poly":
        if isinstance(c, int):
            c = GaussRat(c)
        return Poly({(): c}) if c else Poly()

    @staticmethod
    def var(obj, exp: int = 1) -> "Poly":
        if exp == 0:
            return Poly({(): ONE})
        return Poly({((var_id(obj), exp),): ONE})

    @staticmethod
    def from_vid(vid: int, exp: int = 1) -> "Poly":
        return Poly({((vid, exp),): ONE}) if exp else Poly({(): ONE})

    # predicates
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        t = self.terms
        return not t or (len(t) == 1 and () in t)

    def const_value(self):
        """Constant term (the value itself when the polynomial is constant)."""
        return self.terms.get((), ZERO)

    def is_one(self) -> bool:
        t = self.terms
        return len(t) == 1 and () in t and t[()] == ONE

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        if not self.terms:
            return other == 0
        return self.is_const() and self.terms[()] == other

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self.terms.items()))
        return self._h

    # arithmetic
    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return Poly(_k.add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return Poly(_k.sub_terms(self.terms, other.terms))

    def __rsub__(self, other) -> "Poly":
        return Poly.const(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if len(other.terms) == 1 and () in other.terms:
                return self.scale(other.terms[()])
            if len(self.terms) == 1 and () in self.terms:
                return other.scale(self.terms[()])
            return Poly(_k.mul_terms(self.terms, other.terms))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        if isinstance(c, int):
            c = GaussRat(c)
        if not c:
            return Poly()
        if c == ONE:
            return self
        return Poly(_k.scale_terms(self.terms, c))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly({(): ONE})
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def mul_mono(self, mono, c=ONE) -> "Poly":
        return Poly(_k.mul_mono_terms(self.terms, mono, c))

    # structure
    def vids(self) -> set[int]:
        s = set()
        for m in self.terms:
            for v, _ in m:
                s.add(v)
        return s

    def variables(self) -> set:
        return {_objs[v] for v in self.vids()}

    def degree(self, vid: int) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        best = 0
        for m in self.terms:
            for v, e in m:
                if v == vid and e > best:
                    best = e
        return best

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def coeffs_in(self, vid: int) -> dict[int, "Poly"]:
        """View as a univariate polynomial in ``vid``: exponent -> coefficient."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            e = 0
            rest = m
            for idx, (v, ev) in enumerate(m):
                if v == vid:
                    e = ev
                    rest = m[:idx] + m[idx + 1:]
                    break
            out.setdefault(e, {})[rest] = c
        return {e: Poly(t) for e, t in out.items()}

    @staticmethod
    def from_coeffs(vid: int, coeffs: dict[int, "Poly"]) -> "Poly":
        out: dict = {}
        for e, p in coeffs.items():
            mono = ((vid, e),) if e else ()
            for m, c in p.terms.items():
                out[_k.mono_mul(m, mono)] = c
        return Poly(out)

    def lc_in(self, vid: int) -> "Poly":
        d = self.degree(vid)
        out = {}
        for m, c in self.terms.items():
            e = 0
            rest = m
            for idx, (v, ev) in enumerate(m):
                if v == vid:
                    e = ev
                    rest = m[:idx] + m[idx + 1:]
                    break
            if e == d:
                out[rest] = c
        return Poly(out)

    def partial(self, vid: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            for idx, (v, e) in enumerate(m):
                if v == vid:
                    nm = m[:idx] + ((v, e - 1),) + m[idx + 1:] if e > 1 else m[:idx] + m[idx + 1:]
                    out[nm] = c * e
                    break
        return Poly(out)

    def lead_term(self, keyfunc=None):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if len(self.terms) == 1:
            return next(iter(self.terms.items()))
        if keyfunc is None:
            keyfunc = grlex_keyfunc(self.vids())
        m = max(self.terms, key=keyfunc)
        return m, self.terms[m]

    def lead_coeff(self):
        return self.lead_term()[1]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        lc = self.lead_coeff()
        if lc == ONE:
            return self
        inv = ONE / lc
        return Poly(_k.scale_terms(self.terms, inv))

    def substitute(self, images: dict[int, "Poly"]) -> "Poly":
        """Replace variables by polynomials (simultaneous substitution)."""
        if not images:
            return self
        out = Poly()
        cache: dict = {}
        for m, c in self.terms.items():
            keep = []
            acc = Poly({(): c})
            for v, e in m:
                img = images.get(v)
                if img is None:
                    keep.append((v, e))
                else:
                    key = (v, e)
                    pw = cache.get(key)
                    if pw is None:
                        pw = img ** e
                        cache[key] = pw
                    acc = acc * pw
            if keep:
                acc = acc.mul_mono(tuple(keep))
            out = out + acc
        return out

    def __repr__(self) -> str:
        return f"Poly({self.terms!r})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: Poly, name=lambda obj: str(obj)) -> str:
    if not p.terms:
        return "0"
    key = grlex_keyfunc(p.vids())
    parts = []
    for m in sorted(p.terms, key=key, reverse=True):
        c = p.terms[m]
        mon = "*".join(name(_objs[v]) + (f"^{e}" if e > 1 else "") for v, e in m)
        cs = str(c)
        if not mon:
            parts.append(cs if _atomic(cs) else f"({cs})")
        elif c == ONE:
            parts.append(mon)
        elif c == -ONE:
            parts.append("-" + mon)
        else:
            parts.append((cs if _atomic(cs) else f"({cs})") + "*" + mon)
    out = parts[0]
    for t in parts[1:]:
        out += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
    return out


def _atomic(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return not any(ch in body for ch in "+-*/ ") or (body.count("/") == 1 and body.replace("/", "").isdigit())


# --------------------------------------------------------------- division

def divmod_poly(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Multivariate division of a by b under grlex: a = q*b + r."""
    if not b.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if len(b.terms) == 1 and () in b.terms:
        return a.scale(ONE / b.terms[()]), Poly()
    keyf = grlex_keyfunc(a.vids() | b.vids())
    lm, lc = b.lead_term(keyf)
    inv = ONE / lc
    rest = dict(b.terms)
    del rest[lm]
    p = dict(a.terms)
    heap = [(_neg(keyf(m)), m) for m in p]
    heapq.heapify(heap)
    q: dict = {}
    r: dict = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = p.pop(m, None)
        if c is None:
            continue
        t = _k.mono_div(m, lm)
        if t is None:
            r[m] = c
            continue
        f = c * inv
        q[t] = f
        for m2, c2 in rest.items():
            nm = _k.mono_mul(t, m2)
            old = p.get(nm)
            if old is None:
                p[nm] = -f * c2
                heapq.heappush(heap, (_neg(keyf(nm)), nm))
            else:
                s = old - f * c2
                if s:
                    p[nm] = s
                else:
                    del p[nm]
    return Poly(q), Poly(r)


def _neg(key):
    d, dense = key
    return (-d, tuple(-e for e in dense))


def exact_div(a: Poly, b: Poly) -> Poly:
    """a / b, raising DivisionError when b does not divide a."""
    if not a.terms:
        return a
    if len(b.terms) == 1:
        (m, c), = b.terms.items()
        inv = ONE / c
        out = {}
        for ma, ca in a.terms.items():
            t = _k.mono_div(ma, m)
            if t is None:
                raise DivisionError("inexact division")
            out[t] = ca * inv
        return Poly(out)
    q, r = divmod_poly(a, b)
    if r.terms:
        raise DivisionError("inexact division")
    return q


def try_div(a: Poly, b: Poly) -> Poly | None:
    try:
        return exact_div(a, b)
    except DivisionError:
        return None


# -------------------------------------------------------------------- gcd

def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (recursive subresultant PRS)."""
    if not a.terms:
        if not b.terms:
            raise ValueError("gcd of two zero polynomials")
        return b.monic()
    if not b.terms:
        return a.monic()
    return _gcd(a, b).monic()


_ONE_POLY_TERMS = {(): ONE}


def _one() -> Poly:
    return Poly({(): ONE})


def _gcd(a: Poly, b: Poly) -> Poly:
    if a.is_const() or b.is_const():
        return _one()
    if a == b:
        return a
    va, vb = a.vids(), b.vids()
    only_a = va - vb
    if only_a:
        return _gcd_with_coeffs(b, a, next(iter(only_a)))
    only_b = vb - va
    if only_b:
        return _gcd_with_coeffs(a, b, next(iter(only_b)))
    # monomial content first: cheap and frequent
    ma, mb = _mono_content(a), _mono_content(b)
    if ma or mb:
        common = tuple((v, min(e, dict(mb).get(v, 0))) for v, e in ma if dict(mb).get(v, 0))
        g = _gcd(_k_div_mono(a, ma), _k_div_mono(b, mb))
        return g.mul_mono(common) if common else g
    v = min(va, key=lambda x: (max(a.degree(x), b.degree(x)), _keys[x]))
    return _gcd_main(a, b, v)


def _mono_content(p: Poly):
    it = iter(p.terms)
    first = dict(next(it))
    for m in it:
        if not first:
            break
        d = dict(m)
        first = {v: min(e, d[v]) for v, e in first.items() if v in d}
    return tuple(sorted(first.items()))


def _k_div_mono(p: Poly, m) -> Poly:
    if not m:
        return p
    return Poly({_k.mono_div(t, m): c for t, c in p.terms.items()})


def _gcd_with_coeffs(g: Poly, p: Poly, vid: int) -> Poly:
    """gcd(g, p) where g is free of vid: fold gcd over p's vid-coefficients."""
    coeffs = sorted(p.coeffs_in(vid).values(), key=lambda c: len(c.terms))
    for c in coeffs:
        g = _gcd(g, c)
        if g.is_const():
            return _one()
    return g


def content_in(p: Poly, vid: int) -> Poly:
    coeffs = sorted(p.coeffs_in(vid).values(), key=lambda c: len(c.terms))
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_const():
            break
        g = _gcd(g, c)
    if g.is_const():
        return _one()
    return g.monic()


def _gcd_main(a: Poly, b: Poly, v: int) -> Poly:
    ca, cb = content_in(a, v), content_in(b, v)
    pa = exact_div(a, ca) if not ca.is_one() else a
    pb = exact_div(b, cb) if not cb.is_one() else b
    c = _gcd(ca, cb) if not (ca.is_one() or cb.is_one()) else _one()
    g = _subresultant(pa, pb, v)
    if g.degree(v) <= 0:
        return c
    g = exact_div(g, content_in(g, v))
    return g * c if not c.is_one() else g


def prem(a: Poly, b: Poly, v: int) -> Poly:
    """Pseudo-remainder of a by b with respect to v."""
    db = b.degree(v)
    lcb = b.lc_in(v)
    r = a
    e = a.degree(v) - db + 1
    bc = b.coeffs_in(v)
    while r.terms:
        dr = r.degree(v)
        if dr < db:
            break
        lcr = r.lc_in(v)
        shift = dr - db
        t = Poly()
        for k, ck in bc.items():
            t = t + (ck * lcr).mul_mono(((v, k + shift),) if k + shift else ())
        r = r * lcb - t
        e -= 1
    if e > 0:
        r = r * (lcb ** e)
    return r


def _subresultant(a: Poly, b: Poly, v: int) -> Poly:
    if a.degree(v) < b.degree(v):
        a, b = b, a
    g = _one()
    h = _one()
    while True:
        delta = a.degree(v) - b.degree(v)
        r = prem(a, b, v)
        if not r.terms:
            return b
        if r.degree(v) == 0:
            return _one()
        a = b
        div = g * (h ** delta) if delta else g
        b = exact_div(r, div)
        g = a.lc_in(v)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g ** delta, h ** (delta - 1))


def lcm(a: Poly, b: Poly) -> Poly:
    return exact_div(a * b, gcd(a, b)).monic()
