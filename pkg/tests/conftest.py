import random

import pytest

from logtower.constfield import make_const
from logtower.frontend import parse_iterlog, parse_logsym
from logtower.multipoly import X, GenSym, RatExpr, sym
from logtower.poly import Poly
from logtower.subfield import LinearForm

EX1 = ("(5*x^3*ln(x+1)+ln(x+@e)+27*x^3*ln(x+@sqrt2))"
       " / (ln(x)+x*(ln(x+2)-17*ln(x+3))^2)")

EX2_Y = {
    1: "ln(ln(ln(x-i)+2)+3)",
    2: "ln(ln(x+i)+@sqrt3)",
    3: "ln(x+5/6)",
    4: "ln(ln(x+1/2)+1/2)",
    5: "ln(x+@sqrt5)",
    6: "ln(x+5+i)",
    7: "ln(ln(ln(x)+i))",
}
_y = EX2_Y
EX2 = (f"(ln(x+i)^2*ln(x-i)*({_y[1]}-{_y[3]})^5 + x^3*ln(x)*({_y[2]}-{_y[5]})^2)"
       f" / (ln(ln(x)+i)^2*({_y[5]}-{_y[7]})^7"
       f" + x*ln(x-i)^3*ln(ln(x-i)+2)^2*({_y[6]}-{_y[4]})^12)")

EX2_BASE = ["ln(x-i)", "ln(x+i)", "ln(ln(x)+i)", "ln(x+1/2)", "ln(x)", "x", "ln(ln(x-i)+2)"]

WORKED_E = ["ln(ln(x+@e)+5)", "ln(ln(x))", "ln(x)", "ln(x+1)"]


def L(text):
    """Symbol from its textual form ('x' included)."""
    return X if text == "x" else parse_logsym(text)


def form(**coeffs):
    return LinearForm({k: make_const(v) for k, v in coeffs.items()})


def lform(pairs):
    """LinearForm from [(symbol text or object, coefficient), ...]."""
    return LinearForm({(L(s) if isinstance(s, str) else s): make_const(c) for s, c in pairs})


def gensyms(n, prefix="y"):
    return [GenSym(f"{prefix}{i}", "antiderivative", i, 1) for i in range(1, n + 1)]


# pool of iterated logs for random expressions: ten symbols, levels 1..3
LOG_POOL = [
    "ln(x)", "ln(x+1)", "ln(x-1)", "ln(x+i)", "ln(x+1/2)", "ln(x+@a)",
    "ln(ln(x)+1)", "ln(ln(x+1)+2)", "ln(ln(x))", "ln(ln(ln(x)+1)+1)",
]

SMALL = [1, -1, 2, -2, 3, make_const("1/2"), make_const("i")]


def random_poly(rng, syms, max_deg=3, max_terms=4, with_x=True):
    p = Poly()
    for _ in range(rng.randint(1, max_terms)):
        m = sym(X) ** rng.randint(0, 2) if with_x and rng.random() < 0.4 else Poly.const(1)
        budget = rng.randint(0, max_deg)
        for _ in range(budget):
            m = m * sym(rng.choice(syms))
        p = p + m.scale(make_const(rng.choice(SMALL)))
    return p


def random_iterlog(rng, max_syms=4, max_deg=3):
    """A random rational iterated-log expression with at most max_syms symbols."""
    while True:
        names = rng.sample(LOG_POOL, rng.randint(1, max_syms))
        syms = [parse_logsym(t) for t in names]
        num = random_poly(rng, syms, max_deg)
        den = random_poly(rng, syms, max_deg) if rng.random() < 0.5 else Poly.const(1)
        if num.is_zero() or den.is_zero():
            continue
        if len(syms) > 1 and rng.random() < 0.6:
            # route through linear combinations so the fixing group is nontrivial
            dirs = []
            for _ in range(rng.randint(1, len(syms) - 1)):
                d = Poly()
                for t in rng.sample(syms, rng.randint(1, len(syms))):
                    d = d + sym(t).scale(make_const(rng.choice(SMALL)))
                dirs.append(d)
            combos = {s: rng.choice(dirs) for s in syms}
            num = _compose(num, combos)
            den = _compose(den, combos)
            if num.is_zero() or den.is_zero():
                continue
        u = RatExpr(num, den)
        if not u.is_const():
            return u


def _compose(p, images):
    from logtower.poly import var_id
    return p.substitute({var_id(s): q for s, q in images.items()})


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
