"""Independent checkers: J-I-E conditions, the nonintegrability certificate,
and the substitution oracle for automorphisms."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .constfield import make_const
from .errors import ConstantInput, NotCoprime, ZeroScale
from .gaussian import ONE, GaussRat
from .multipoly import (
    RatExpr, divides, irreducible_linear_check, poly_sqrt, scale_vars, sorted_syms, translate,
)
from .poly import Poly, content_in, exact_div, gcd, var_id, var_obj

CERTIFIED, REFUTED, UNKNOWN = "Certified", "Refuted", "Unknown"


@dataclass
class Certificate:
    verdict: str
    witness: dict = field(default_factory=dict)
    reason: str = ""


@dataclass(frozen=True)
class JieTriple:
    A: Poly
    B: Poly
    C: Poly
    below: frozenset  # symbols of the stage below
    name: str = ""


def _label(t: JieTriple, i: int) -> str:
    return t.name or f"#{i}"


def jie_check(triples: Sequence[JieTriple]) -> Certificate:
    """Check coprimality, C1 and C2 for a family of antiderivatives y_i' = A_i/(C_i B_i).

    A single antiderivative only has to be I-E (coprime data, irreducible C);
    the separating-variable clause C2 constrains families of two or more.
    """
    triples = list(triples)
    refuted: list[str] = []
    unknown: list[str] = []
    witness: dict = {}
    for i, t in enumerate(triples):
        lab = _label(t, i)
        for (na, a), (nb, b) in ((("A", t.A), ("B", t.B)), (("B", t.B), ("C", t.C)), (("A", t.A), ("C", t.C))):
            if a.is_zero() and b.is_zero():
                refuted.append(f"coprimality: ({na},{nb}) both zero for {lab}")
            elif not gcd(a, b).is_const():
                refuted.append(f"coprimality: gcd({na},{nb}) is nonconstant for {lab}")
        if t.C.is_const():
            refuted.append(f"C1: C is constant for {lab}")
            continue
        irr = irreducible_linear_check(t.C)
        if irr.verdict == "Reducible":
            refuted.append(f"C1: C is reducible for {lab}")
        elif irr.verdict == "Unknown":
            unknown.append(f"C1: irreducibility of C undecided for {lab} ({irr.note})")
    for i, ti in enumerate(triples):
        if ti.C.is_const():
            continue
        for j, tj in enumerate(triples):
            if i != j and not tj.C.is_zero() and divides(ti.C, tj.C)[0]:
                refuted.append(f"C1: C of {_label(ti, i)} divides C of {_label(tj, j)}")
            if not tj.B.is_zero() and divides(ti.C, tj.B)[0]:
                refuted.append(f"C1: C of {_label(ti, i)} divides B of {_label(tj, j)}")
    separating = {}
    for i, t in enumerate(triples):
        xc = _separating_variable(t)
        lab = _label(t, i)
        if xc is not None:
            separating[lab] = str(xc)
        elif len(triples) >= 2:
            refuted.append(f"C2: no variable of the stage below separates C from A and B for {lab}")
    witness["x_C"] = separating
    if len(triples) == 1 and not separating:
        witness["note"] = "single I-E antiderivative; C2 not required"
    if refuted:
        return Certificate(REFUTED, {"violations": sorted(set(refuted))}, "; ".join(sorted(set(refuted))))
    if unknown:
        return Certificate(UNKNOWN, {"undecided": sorted(set(unknown))}, "; ".join(sorted(set(unknown))))
    if "note" in witness:
        return Certificate(CERTIFIED, witness, "coprimality and C1 hold; C2 is vacuous for one antiderivative")
    return Certificate(CERTIFIED, witness, "coprimality, C1 and C2 hold")


def _separating_variable(t: JieTriple):
    for s in sorted_syms(t.below):
        v = var_id(s)
        if t.C.partial(v).is_zero():
            continue
        if t.A.partial(v).is_zero() and t.B.partial(v).is_zero():
            return s
    return None


# ---------------------------------------------------- nonintegrability


def no_antiderivative_certificate(S: Poly, T: Poly, vars: Iterable | None = None) -> Certificate:
    """Certify that no element of the tower has derivative S/T.

    Looks for an irreducible R with R | T and R^2 not dividing T.
    """
    if T.is_zero() or T.is_const():
        raise ConstantInput("T must be a nonconstant polynomial")
    if not S.is_zero() and not gcd(S, T).is_const():
        raise NotCoprime("S and T share a nonconstant factor")
    cands = sorted_syms(vars) if vars is not None else sorted_syms(T.variables())
    for s in cands:
        R = _simple_factor(T, var_id(s))
        if R is not None:
            R = R.monic()
            ok, _ = divides(R, T)
            twice, _ = divides(R * R, T)
            if ok and not twice and (S.is_zero() or gcd(R, S).is_const()):
                return Certificate(CERTIFIED, {"R": R, "variable": str(s)},
                                   "T has a simple irreducible factor R")
    return Certificate(UNKNOWN, {}, "no simple linear factor found")


def _simple_factor(T: Poly, v: int) -> Poly | None:
    d = T.degree(v)
    if d <= 0:
        return None
    if d == 1:
        # primitive and linear in v, hence irreducible
        c = content_in(T, v)
        return exact_div(T, c) if not c.is_one() else T
    sqf = _simple_part(T, v)
    if sqf is None or sqf.degree(v) <= 0:
        return None
    if sqf.degree(v) == 1:
        c = content_in(sqf, v)
        return exact_div(sqf, c) if not c.is_one() else sqf
    if sqf.degree(v) == 2:
        return _quadratic_root_factor(sqf, v)
    return None


def _simple_part(T: Poly, v: int) -> Poly | None:
    """Product of the factors of multiplicity one (Yun, in the variable v)."""
    d = T.partial(v)
    g = gcd(T, d)
    if g.is_const():
        return T
    w = exact_div(T, g)         # product of all distinct factors
    rest = gcd(g, w)            # those of multiplicity >= 2
    return exact_div(w, rest)


def _quadratic_root_factor(p: Poly, v: int) -> Poly | None:
    cs = p.coeffs_in(v)
    a = cs[2]
    if not a.is_const():
        return None
    a = a.const_value()
    b = cs.get(1, Poly())
    c = cs.get(0, Poly())
    disc = b * b - c.scale(a * 4)
    if disc.is_zero():
        return None
    lc = disc.lead_coeff()
    s = poly_sqrt(disc.scale(ONE / lc))
    k = lc.sqrt() if isinstance(lc, GaussRat) else None
    if s is None or k is None:
        return None
    s = s.scale(k)
    # roots (-b +- s) / 2a; take the + root first
    root = (s - b).scale(ONE / (a * 2))
    return Poly.from_vid(v) - root


# ------------------------------------------------------ substitution oracle


def substitution_fixes(u, shift: Mapping | None = None, scale: Mapping | None = None) -> bool:
    """Does y -> y + c (and e -> l*e) map u to itself?"""
    u = RatExpr.of(u)
    shift = {s: make_const(c) for s, c in (shift or {}).items()}
    scale = {s: make_const(c) for s, c in (scale or {}).items()}
    if any(not c for c in scale.values()):
        raise ZeroScale("scaling by zero is not an automorphism")
    sp = translate(u.num, shift)
    if scale:
        sp = scale_vars(sp, scale)
        sq = scale_vars(translate(u.den, shift), scale)
        return sp * u.den == u.num * sq
    # translations keep the top-degree part, so a reduced monic pair maps to one
    if sp != u.num:
        return False
    return translate(u.den, shift) == u.den


# ------------------------------------------------------------ probe grid

DEFAULT_GRID = (0, 1, -1, 2, -2, GaussRat(1, 0, 2))


def kernel_basis(forms, coords: Sequence) -> list[dict]:
    """Basis of the common zero set of C-forms (in RREF) over ``coords``."""
    pivots = {}
    for f in forms:
        lead = next(s for s in coords if s in f.coeffs)
        pivots[lead] = f
    basis = []
    for s in coords:
        if s in pivots:
            continue
        vec = {s: ONE}
        for p, f in pivots.items():
            c = f.coeffs.get(s)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def probe_points(coords: Sequence, forms, grid=DEFAULT_GRID, limit: int = 20000, seed: int = 0):
    """Shift vectors: the full grid when small enough, else axes, pairs and a
    seeded sample; plus kernel vectors and perturbed kernel vectors."""
    import itertools
    import random

    grid = [make_const(g) for g in grid]
    k = len(coords)
    pts = []
    if len(grid) ** k <= limit:
        for combo in itertools.product(grid, repeat=k):
            pts.append(dict(zip(coords, combo)))
    else:
        rng = random.Random(seed)
        for i, s in enumerate(coords):
            for g in grid:
                pts.append({s: g})
            for t in coords[i + 1:]:
                for g in grid[1:3]:
                    for h in grid[1:3]:
                        pts.append({s: g, t: h})
        while len(pts) < limit // 4:
            pts.append({s: rng.choice(grid) for s in coords})
    kb = kernel_basis(forms, coords)
    for vec in kb:
        pts.append(vec)
        for s in coords:
            bumped = dict(vec)
            bumped[s] = bumped.get(s, 0) + ONE
            pts.append(bumped)
    if len(kb) > 1:
        total = {}
        for vec in kb:
            for s, c in vec.items():
                total[s] = total.get(s, 0) + c
        pts.append(total)
    return pts


def soundness_probe(u, pres, grid=DEFAULT_GRID, limit: int = 20000) -> dict:
    """Compare substitution_fixes with the vanishing of every generator form."""
    coords = sorted_syms(pres.pi_base)
    forms = pres.linear
    mismatches = []
    pts = probe_points(coords, forms, grid, limit)
    for c in pts:
        direct = substitution_fixes(u, c)
        predicted = all(not f.at(c) for f in forms)
        if direct != predicted:
            mismatches.append({str(s): v for s, v in c.items()})
    return {"probes": len(pts), "mismatches": mismatches, "coordinates": [str(s) for s in coords]}
