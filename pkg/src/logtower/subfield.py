"""Generators of the differential subfield C<u> (or F<u>) for an element u.

Antiderivative symbols contribute C-linear forms (the translations that fix
u are exactly the common zeros of those forms); exponential symbols
contribute power products (the scalings that fix u).  The iterated-log
pipeline specialises the antiderivative case to the pi-base of u.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .constfield import Const, const_sort_key, const_text
from .errors import (
    EmptyPresentation, NonPolynomialCoefficient, NotFixed, NotIterLogExpression, ZeroPolynomial,
)
from .gaussian import ONE, ZERO
from .iterlog import closure, essential_elements, pi_set
from .linalg import hnf, invert, rref
from .multipoly import (
    X, GenSym, LogSym, RatExpr, homogeneous_components, is_exponential, sorted_syms, split_by,
)
from .poly import Poly, exact_div, gcd, grlex_keyfunc, lcm, var_id, var_obj


# ------------------------------------------------------------------ forms


class LinearForm:
    """sum coeff[y] * y.  C-forms carry Const coefficients, F-forms MPoly ones."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping):
        self.coeffs = {s: c for s, c in coeffs.items() if c}

    @property
    def is_c_form(self) -> bool:
        return all(not isinstance(c, (Poly, RatExpr)) for c in self.coeffs.values())

    def symbols(self) -> list:
        return sorted_syms(self.coeffs)

    def at(self, shift: Mapping):
        """Value of the form at a shift vector (missing coordinates are 0)."""
        acc = None
        for s, c in self.coeffs.items():
            v = shift.get(s)
            if v is None or not v:
                continue
            t = c * v
            acc = t if acc is None else acc + t
        return ZERO if acc is None else acc

    def as_poly(self) -> Poly:
        out = Poly()
        for s, c in self.coeffs.items():
            out = out + (c * Poly.var(s) if isinstance(c, Poly) else Poly.var(s).scale(c))
        return out

    def as_ratexpr(self) -> RatExpr:
        return RatExpr.of(self.as_poly())

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"LinearForm({self})"

    def __str__(self):
        from .frontend import format_poly_expr
        return format_poly_expr(self.as_poly())


@dataclass
class Presentation:
    """C(S, power products, base) with bookkeeping for reports."""

    linear: list = field(default_factory=list)      # C-LinearForms (RREF)
    products: list = field(default_factory=list)    # dicts symbol -> int (HNF rows)
    base: frozenset = frozenset()                   # symbols of the base field
    pi_base: frozenset = frozenset()
    essential: frozenset = frozenset()
    closure: frozenset = frozenset()
    mode: str = "iterlog"
    f_forms: list = field(default_factory=list)     # unreduced forms, when C-reduction was skipped
    provenance: list = field(default_factory=list)

    def field_symbols(self) -> list:
        return sorted_syms(self.base)


# ------------------------------------------------------------ fixing forms


def fixing_forms(p: Poly, vars: Iterable) -> list[LinearForm]:
    """F-forms whose common zeros are exactly the shifts c with p(y + c) = p."""
    if p.is_zero():
        raise ZeroPolynomial("fixing forms of the zero polynomial")
    vars = sorted_syms(set(vars))
    present = p.vids()
    vs = [s for s in vars if var_id(s) in present]
    if not vs:
        return []
    forms: list[LinearForm] = []
    seen = set()
    for deg, H in homogeneous_components(p, vs):
        if deg == 0:
            continue
        rows: dict[tuple, dict] = {}
        for s in vs:
            dH = H.partial(var_id(s))
            if dH.is_zero():
                continue
            for omega, coeff in split_by(dH, vs).items():
                rows.setdefault(omega, {})[s] = coeff
        for omega in sorted(rows, key=_mono_sort):
            f = _normalize_f_form(rows[omega])
            key = frozenset(f.items())
            if key not in seen:
                seen.add(key)
                forms.append(LinearForm(f))
    return forms


def fixing_forms_by_monomial(p: Poly, vars: Iterable) -> list[LinearForm]:
    """Same system, grouped by full monomial support instead of per component."""
    vars = sorted_syms(set(vars))
    rows: dict[tuple, dict] = {}
    for s in vars:
        d = p.partial(var_id(s))
        for omega, coeff in split_by(d, vars).items():
            rows.setdefault(omega, {})[s] = coeff
    out, seen = [], set()
    for omega in sorted(rows, key=_mono_sort):
        f = _normalize_f_form(rows[omega])
        key = frozenset(f.items())
        if key not in seen:
            seen.add(key)
            out.append(LinearForm(f))
    return out


def _mono_sort(m):
    return tuple((var_obj(v).sort_key(), e) for v, e in m)


def _normalize_f_form(row: dict) -> dict:
    """Divide out the gcd of the coefficients and fix the leading scalar."""
    syms = sorted_syms(row)
    g = None
    for s in syms:
        g = row[s] if g is None else gcd(g, row[s])
        if g.is_const():
            break
    out = {s: exact_div(row[s], g) for s in syms} if not g.is_const() else dict(row)
    lead = out[syms[0]].lead_coeff()
    if lead != ONE:
        inv = ONE / lead
        out = {s: c.scale(inv) for s, c in out.items()}
    return out


def reduce_forms_over_C(forms: Sequence[LinearForm], *, clear_denominators: bool = True) -> list[LinearForm]:
    """C-linear system with the same solutions, in RREF over the symbol order."""
    rows: list[dict] = []
    cols: set = set()
    for f in forms:
        coeffs = dict(f.coeffs)
        dens = [c.den for c in coeffs.values() if isinstance(c, RatExpr) and not c.den.is_one()]
        if dens:
            if not clear_denominators:
                raise NonPolynomialCoefficient("form coefficient has a denominator")
            L = dens[0]
            for d in dens[1:]:
                L = lcm(L, d)
            coeffs = {s: RatExpr.of(c) * RatExpr.of(L) for s, c in coeffs.items()}
        by_beta: dict[tuple, dict] = {}
        for s, c in coeffs.items():
            if isinstance(c, RatExpr):
                c = c.num
            if not isinstance(c, Poly):
                c = Poly.const(c)
            cols.add(s)
            for beta, a in c.terms.items():
                by_beta.setdefault(beta, {})[s] = a
        rows.extend(by_beta.values())
    order = sorted_syms(cols)
    return [LinearForm(r) for r in rref(rows, order)]


def c_forms_rref(forms: Sequence[LinearForm]) -> list[LinearForm]:
    cols = set()
    for f in forms:
        cols |= set(f.coeffs)
    return [LinearForm(r) for r in rref([f.coeffs for f in forms], sorted_syms(cols))]


def span_equal(a: Sequence[LinearForm], b: Sequence[LinearForm]) -> bool:
    cols = set()
    for f in list(a) + list(b):
        cols |= set(f.coeffs)
    order = sorted_syms(cols)
    ra = rref([f.coeffs for f in a], order)
    rb = rref([f.coeffs for f in b], order)
    return ra == rb


# ------------------------------------------------------------ power products


def _exp_vector(mono: tuple, evids: list[int]) -> tuple[int, ...]:
    d = dict(mono)
    return tuple(d.get(v, 0) for v in evids)


def _product_rows(vectors: list[tuple[int, ...]], evars: list) -> list[dict]:
    return [{s: e for s, e in zip(evars, row) if e} for row in hnf(vectors)]


def power_products_hnf(products: Sequence[Mapping], evars: Sequence | None = None) -> list[dict]:
    """Canonical (HNF) basis of the lattice spanned by power products."""
    if evars is None:
        evars = sorted_syms({s for p in products for s in p})
    vecs = [tuple(p.get(s, 0) for s in evars) for p in products]
    return _product_rows(vecs, list(evars))


# -------------------------------------------------------------- subfields


def _base_of(u: RatExpr, vars) -> frozenset:
    return frozenset(u.symbols() - set(vars))


def antiderivative_subfield(u, vars: Iterable, table: Mapping | None = None,
                            base: Iterable | None = None) -> Presentation:
    u = RatExpr.of(u)
    vars = set(vars)
    forms = []
    if not u.num.is_zero():
        forms += fixing_forms(u.num, vars)
    forms += fixing_forms(u.den, vars)
    S = reduce_forms_over_C(forms)
    pres = Presentation(linear=S, base=frozenset(base) if base is not None else _base_of(u, vars),
                        pi_base=frozenset(vars & u.symbols()), essential=frozenset(u.symbols()),
                        mode="antiderivative")
    return pres


def _split_by_evars(p: Poly, evars: list) -> dict[tuple, Poly]:
    return split_by(p, evars)


def exponential_subfield(u, evars: Iterable, base: Iterable | None = None) -> Presentation:
    u = RatExpr.of(u)
    evars = sorted_syms(set(evars))
    pres = Presentation(base=frozenset(base) if base is not None else _base_of(u, evars),
                        essential=frozenset(u.symbols()), pi_base=frozenset(set(evars) & u.symbols()),
                        mode="exponential")
    if u.num.is_zero():
        pres.provenance.append("u = 0: trivial field")
        return pres
    evids = [var_id(s) for s in evars]
    pm = _split_by_evars(u.num, evars)
    qm = _split_by_evars(u.den, evars)
    ref = _reference_monomial(pm, evids)
    rv = _exp_vector(ref, evids)
    vecs = []
    for m in list(pm) + list(qm):
        v = _exp_vector(m, evids)
        vecs.append(tuple(a - b for a, b in zip(v, rv)))
    pres.products = _product_rows(vecs, evars)
    return pres


def _reference_monomial(groups: Mapping[tuple, Poly], evids: list[int]) -> tuple:
    keyf = grlex_keyfunc(evids)
    return max(groups, key=keyf)


def mixed_subfield(u, avars: Iterable, evars: Iterable, base: Iterable | None = None) -> Presentation:
    u = RatExpr.of(u)
    avars, evars = set(avars), sorted_syms(set(evars))
    if not evars:
        p = antiderivative_subfield(u, avars, base=base)
        p.mode = "mixed"
        return p
    pres = Presentation(base=frozenset(base) if base is not None else _base_of(u, avars | set(evars)),
                        essential=frozenset(u.symbols()),
                        pi_base=frozenset((avars | set(evars)) & u.symbols()), mode="mixed")
    if u.num.is_zero():
        pres.provenance.append("u = 0: trivial field")
        return pres
    evids = [var_id(s) for s in evars]
    pm = split_by(u.num, evars)
    qm = split_by(u.den, evars)
    ref = _reference_monomial(pm, evids)
    lead = pm[ref]
    forms = []
    for coeff in list(pm.values()) + list(qm.values()):
        g = gcd(coeff, lead)
        alpha, beta = exact_div(coeff, g), exact_div(lead, g)
        ratio = RatExpr(alpha, beta)
        if avars & ratio.symbols():
            forms += fixing_forms(ratio.num, avars) if not ratio.num.is_zero() else []
            forms += fixing_forms(ratio.den, avars)
    pres.linear = reduce_forms_over_C(forms)
    rv = _exp_vector(ref, evids)
    vecs = [tuple(a - b for a, b in zip(_exp_vector(m, evids), rv)) for m in list(pm) + list(qm)]
    pres.products = _product_rows(vecs, evars)
    pres.provenance.append("coefficient ratios normalised by the monic gcd with the leading coefficient")
    return pres


def iterlog_subfield(u) -> Presentation:
    u = RatExpr.of(u)
    E = essential_elements(u).symbols
    for s in E:
        if not isinstance(s, LogSym):
            raise NotIterLogExpression(f"symbol {s} is not an iterated logarithm", symbol=str(s))
    if E <= {X}:
        pres = Presentation(base=frozenset(E), essential=frozenset(E), closure=frozenset(E))
        pres.provenance.append("u is constant: C<u> = C" if not E else "u lies in C(x): C<u> = C(x)")
        return pres
    cl = closure(E)
    P = cl.pi_base
    base = set()
    for k in range(1, cl.n + 1):
        base |= pi_set(P, k)
    base.add(X)
    forms = []
    if not u.num.is_zero():
        forms += fixing_forms(u.num, P)
    forms += fixing_forms(u.den, P)
    S = reduce_forms_over_C(forms)
    pres = Presentation(linear=S, base=frozenset(base), pi_base=P, essential=E, closure=cl.closure)
    return pres


def generic_subfield(u, kinds: Mapping, deps: Mapping, base: Iterable | None = None) -> Presentation:
    """Subfield for u in a declared tower.

    ``kinds`` maps symbols to 'antiderivative' or 'exponential'; ``deps`` maps
    each symbol to the set of symbols its (log-)derivative mentions,
    transitively closed.  The pi-base analogue is E minus everything some
    element of E depends on.
    """
    u = RatExpr.of(u)
    E = frozenset(u.symbols())
    below = set()
    for s in E:
        below |= set(deps.get(s, ()))
    P = frozenset(E - below)
    if base is None:
        base_syms = frozenset(below)
    else:
        base_syms = frozenset(base)
        for s in E - set(base_syms):
            if s not in P:
                base_syms = base_syms | {s}
        P = frozenset(E - base_syms)
    avars = {s for s in P if kinds.get(s, "antiderivative") == "antiderivative"}
    evars = {s for s in P if kinds.get(s) == "exponential"}
    if not P:
        pres = Presentation(base=base_syms | E, essential=E, mode="generic")
        pres.provenance.append("u lies in the base field")
        return pres
    if evars and avars:
        pres = mixed_subfield(u, avars, evars, base=base_syms)
    elif evars:
        pres = exponential_subfield(u, evars, base=base_syms)
    else:
        pres = antiderivative_subfield(u, avars, base=base_syms)
    pres.mode = "generic"
    pres.pi_base = P
    pres.essential = E
    pres.closure = E | base_syms
    pres.provenance.append("base field symbols assumed to lie in C<u>; otherwise read the result as F<u>")
    return pres


# ------------------------------------------------------- single generator


def combine_to_single_generator(p: Presentation) -> RatExpr:
    """u = sum_i x^i L_i, a single generator of the same field."""
    if not p.linear:
        if set(p.base) == {X}:
            return RatExpr.of(X)
        raise EmptyPresentation("no linear generators to combine")
    out = RatExpr.of(0)
    xp = Poly.var(X)
    for i, L in enumerate(p.linear, start=1):
        out = out + RatExpr.of(L.as_poly() * (xp ** i))
    return out


# ---------------------------------------------------- coordinate rewriting


class CoordSym:
    """A coordinate w_j = L_j or a kernel coordinate z_k after a change of basis."""

    __slots__ = ("name", "index")

    def __init__(self, name: str, index: int):
        self.name = name
        self.index = index

    def sort_key(self):
        return (10**6, (), (self.index, self.name))

    def __eq__(self, other):
        return isinstance(other, CoordSym) and other.name == self.name

    def __hash__(self):
        return hash(("coord", self.name))

    def __str__(self):
        return self.name

    __repr__ = __str__


def rewrite_in_generators(p: Poly, forms: Sequence[LinearForm], vars: Iterable) -> tuple[Poly, dict]:
    """Rewrite p in coordinates (w_1..w_r, z_...) with w_j = forms[j].

    Returns the rewritten polynomial and the coordinate map.  Raises
    NotFixed if p depends on a kernel coordinate z.
    """
    vars = sorted_syms(set(vars) | {s for f in forms for s in f.coeffs})
    if not forms:
        kernel = [s for s in vars if var_id(s) in p.vids()]
        if kernel:
            raise NotFixed(f"{kernel[0]} is a kernel direction", symbol=str(kernel[0]))
        return p, {}
    echelon = rref([f.coeffs for f in forms], vars)
    pivots = {next(s for s in vars if s in r) for r in echelon}
    free = [s for s in vars if s not in pivots]
    n = len(vars)
    rows = [[f.coeffs.get(s, ZERO) for s in vars] for f in forms]
    rows += [[ONE if s == z else ZERO for s in vars] for z in free]
    if len(rows) != n:
        raise ValueError("forms are linearly dependent")
    inv = invert(rows)
    coords = [CoordSym(f"w{j + 1}", j) for j in range(len(forms))]
    coords += [CoordSym(f"z{k + 1}", len(forms) + k) for k in range(len(free))]
    images = {}
    for i, s in enumerate(vars):
        img = Poly()
        for j, cs in enumerate(coords):
            if inv[i][j]:
                img = img + Poly.var(cs).scale(inv[i][j])
        images[var_id(s)] = img
    q = p.substitute(images)
    for cs in coords[len(forms):]:
        if var_id(cs) in q.vids():
            raise NotFixed(f"kernel coordinate {cs} survives the rewrite", symbol=str(cs))
    return q, {str(c): (forms[j] if j < len(forms) else free[j - len(forms)])
               for j, c in enumerate(coords)}
