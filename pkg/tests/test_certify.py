import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import EX1, L, random_iterlog
from logtower.certify import (
    CERTIFIED, REFUTED, UNKNOWN, JieTriple, jie_check, no_antiderivative_certificate,
    soundness_probe, substitution_fixes,
)
from logtower.constfield import make_const
from logtower.errors import ConstantInput, NotCoprime, ZeroScale
from logtower.frontend import parse_iterlog
from logtower.multipoly import X, RatExpr, divides, sym
from logtower.poly import Poly, gcd
from logtower.subfield import iterlog_subfield

x = sym(X)
lnx = L("ln(x)")
K = make_const
BELOW = frozenset({X, lnx})


def separated_triple(a, name=""):
    return JieTriple(sym(lnx), Poly.const(1), x - Poly.const(K(a)), BELOW, name)


def test_separated_triples_certified():
    cert = jie_check([separated_triple(a, f"y{k}") for k, a in enumerate([1, 2, "@a", "i"])])
    assert cert.verdict == CERTIFIED
    assert set(cert.witness["x_C"].values()) == {"x"}


def test_arctan_stage_certified():
    t = JieTriple(Poly.const(1), x + Poly.const(K("i")), x - Poly.const(K("i")), frozenset({X}), "t")
    assert jie_check([t]).verdict == CERTIFIED


def test_colliding_pair_refuted():
    a = JieTriple(sym(lnx), Poly.const(1), x, BELOW, "y1")
    b = JieTriple(sym(lnx), Poly.const(1), x, BELOW, "y2")
    cert = jie_check([a, b])
    assert cert.verdict == REFUTED and "C1" in cert.reason


def test_other_violations():
    # C divides some B
    a = JieTriple(Poly.const(1), x - 2, x - 1, BELOW, "y1")
    b = JieTriple(Poly.const(1), x - 1, x - 2, BELOW, "y2")
    assert jie_check([a, b]).verdict == REFUTED
    # A and C share a factor
    c = JieTriple(x - 1, Poly.const(1), x - 1, BELOW, "y3")
    assert "coprimality" in jie_check([c]).reason
    # reducible C
    d = JieTriple(Poly.const(1), Poly.const(1), (x - 1) * (x - 2), BELOW, "y4")
    assert jie_check([d]).verdict == REFUTED
    # cubic C: irreducibility undecided
    e = JieTriple(Poly.const(1), Poly.const(1), x ** 3 + x + 1, BELOW, "y5")
    assert jie_check([e]).verdict == UNKNOWN
    # two triples sharing the variable of A: no separating variable
    f = JieTriple(x, Poly.const(1), x - 3, frozenset({X}), "y6")
    g = JieTriple(x, Poly.const(1), x - 4, frozenset({X}), "y7")
    cert = jie_check([f, g])
    assert cert.verdict == REFUTED and "C2" in cert.reason


def test_jie_order_insensitive():
    rng = random.Random(3)
    pool = [separated_triple(a) for a in (1, 2, 3)] + [
        JieTriple(x, Poly.const(1), x - 4, BELOW), JieTriple(sym(lnx), x - 1, x - 5, BELOW),
        JieTriple(Poly.const(1), Poly.const(1), x ** 3 + 2, BELOW)]
    for _ in range(30):
        fam = rng.sample(pool, rng.randint(1, 4))
        verdicts = {jie_check(list(perm)).verdict for perm in itertools.permutations(fam)}
        assert len(verdicts) == 1


def test_nonintegrability_examples():
    alpha = Poly.const(K("@alpha"))
    c = no_antiderivative_certificate(Poly.const(1), x + alpha, [X])
    assert c.verdict == CERTIFIED and c.witness["R"] == x + alpha
    assert no_antiderivative_certificate(Poly.const(1), (x + 1) ** 2).verdict == UNKNOWN
    c = no_antiderivative_certificate(x.scale(K(2)), x ** 2 + 1)
    assert c.verdict == CERTIFIED and c.witness["R"] == x - Poly.const(K("i"))
    c = no_antiderivative_certificate(Poly.const(1), (x + 1) ** 2 * (x + 2))
    assert c.verdict == CERTIFIED and c.witness["R"] == x + 2
    with pytest.raises(ConstantInput):
        no_antiderivative_certificate(Poly.const(1), Poly.const(3))
    with pytest.raises(NotCoprime):
        no_antiderivative_certificate(x, x * (x + 1))


coef = st.sampled_from([1, -1, 2, "1/2", "i", "@a"]).map(make_const)


@st.composite
def lin_factors(draw):
    out = []
    for _ in range(draw(st.integers(1, 3))):
        f = x + Poly.const(draw(coef))
        if draw(st.booleans()):
            f = f + sym(lnx).scale(draw(coef))
        out.append((f, draw(st.integers(1, 3))))
    return out


@settings(max_examples=60, deadline=None)
@given(lin_factors(), st.sampled_from([1, 3, "i"]))
def test_witness_rechecks(factors, s):
    T = Poly.const(1)
    for f, e in factors:
        T = T * f ** e
    S = Poly.const(make_const(s))
    cert = no_antiderivative_certificate(S, T)
    if cert.verdict == CERTIFIED:
        R = cert.witness["R"]
        assert divides(R, T)[0] and not divides(R * R, T)[0] and gcd(R, S).is_const()
    else:
        assert cert.verdict == UNKNOWN


def test_substitution_examples():
    u = parse_iterlog(EX1)
    assert not substitution_fixes(u, {L("ln(x+@e)"): 1})
    assert substitution_fixes(u, {})
    assert substitution_fixes(u, {L("ln(x+2)"): 0}, {})
    y5, y6 = L("ln(x+2)"), L("ln(x+3)")
    v = RatExpr.of(sym(y5) - sym(y6).scale(K(17)))
    assert substitution_fixes(v, {y5: 17, y6: 1})
    assert not substitution_fixes(v, {y5: 1, y6: 1})
    with pytest.raises(ZeroScale):
        substitution_fixes(v, {}, {y5: 0})


def _naive_fixes(u, shift):
    """Substitute, rebuild a reduced fraction from scratch, compare."""
    from logtower.multipoly import translate
    return RatExpr(translate(u.num, shift), translate(u.den, shift)) == u


def test_substitution_matches_naive_reduction():
    rng = random.Random(9)
    grid = [K(v) for v in (0, 1, -1, "1/2")]
    for _ in range(40):
        u = random_iterlog(rng, max_syms=3)
        pres = iterlog_subfield(u)
        coords = sorted(pres.pi_base, key=lambda s: s.sort_key())
        for combo in itertools.product(grid, repeat=len(coords)):
            c = dict(zip(coords, combo))
            assert substitution_fixes(u, c) == _naive_fixes(u, c)


@pytest.mark.parametrize("text", [
    EX1,
    "ln(x+1)*ln(x+2) + ln(ln(x))",
    "(ln(x)-ln(x+1))^2/(ln(x+i)+2*ln(x)-2*ln(x+1))",
    "ln(ln(x)+1)^3 - ln(ln(x)+2)",
])
def test_cross_module_probe(text):
    u = parse_iterlog(text)
    res = soundness_probe(u, iterlog_subfield(u))
    assert res["mismatches"] == [] and res["probes"] > 0
