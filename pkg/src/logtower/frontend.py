"""Expression parsing, printing, and normalisation into RatExpr.

Grammar::

    expr     := term (("+"|"-") term)*
    term     := factor (("*"|"/") factor)*
    factor   := base ("^" natural)?
    base     := "x" | "ln" "(" expr ")" | constant | "(" expr ")" | name
    constant := rational | "i" | "@" name
    rational := "-"? digits ("/" digits)?

A numeric literal ``p/q`` is read greedily, so ``x/2/3`` is x divided by
two thirds.  Names other than x, i and ln are only legal in generic mode,
where they must be declared tower symbols.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .constfield import AtomFrac, I, const_text, make_const
from .errors import ExprSyntaxError, NotIterLog, UnknownSymbol
from .gaussian import ONE, GaussRat
from .multipoly import X, GenSym, LogSym, RatExpr
from .poly import Poly, grlex_keyfunc, var_obj

def _skip_ws(s: str, i: int) -> int:
    while i < len(s) and s[i].isspace():
        i += 1
    return i


# ---------------------------------------------------------------------- AST


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Rat:
    value: Fraction


@dataclass(frozen=True)
class Imag:
    pass


@dataclass(frozen=True)
class AtomRef:
    name: str


@dataclass(frozen=True)
class Ln:
    arg: object


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


ExprAst = object

# ------------------------------------------------------------------- parser

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_DIGITS = re.compile(r"[0-9]+")


class _Parser:
    def __init__(self, text: str, mode: str, names: frozenset):
        self.s = text
        self.pos = 0
        self.mode = mode
        self.names = names

    def ws(self):
        s, n = self.s, len(self.s)
        while self.pos < n and s[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.ws()
        return self.s[self.pos] if self.pos < len(self.s) else ""

    def fail(self, msg: str):
        raise ExprSyntaxError(msg, self.pos)

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def parse(self):
        if not self.s.strip():
            self.fail("empty expression")
        node = self.expr()
        if self.peek():
            self.fail(f"unexpected {self.peek()!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.s[self.pos]
            self.pos += 1
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek() in ("*", "/"):
            op = self.s[self.pos]
            self.pos += 1
            node = Bin(op, node, self.factor())
        return node

    def factor(self):
        node = self.base()
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                self.pos += 1
                neg = True
            self.ws()
            m = _DIGITS.match(self.s, self.pos)
            if not m:
                self.fail("expected a natural exponent")
            self.pos = m.end()
            node = Pow(node, int(m.group()))
            if neg:
                node = Bin("/", Rat(Fraction(1)), node)
        return node

    def rational(self):
        start = self.pos
        neg = False
        if self.s[self.pos] == "-":
            neg = True
            self.pos += 1
        m = _DIGITS.match(self.s, self.pos)
        if not m:
            self.pos = start
            self.fail("expected a number")
        self.pos = m.end()
        num = int(m.group())
        den = 1
        # whitespace is insignificant, so "3 / 4" is the same literal as "3/4"
        j = _skip_ws(self.s, self.pos)
        if j < len(self.s) and self.s[j] == "/":
            m2 = _DIGITS.match(self.s, _skip_ws(self.s, j + 1))
            if m2:
                den = int(m2.group())
                if den == 0:
                    self.fail("zero denominator in literal")
                self.pos = m2.end()
        return Rat(Fraction(-num if neg else num, den))

    def base(self):
        ch = self.peek()
        if not ch:
            self.fail("unexpected end of input")
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch.isdigit() or ch == "-":
            return self.rational()
        if ch == "@":
            self.pos += 1
            m = _NAME.match(self.s, self.pos)
            if not m:
                self.fail("expected an atom name")
            self.pos = m.end()
            return AtomRef(m.group())
        m = _NAME.match(self.s, self.pos)
        if not m:
            self.fail(f"unexpected {ch!r}")
        name = m.group()
        start = self.pos
        self.pos = m.end()
        if name == "ln":
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Ln(arg)
        if name == "i":
            return Imag()
        if name == "x":
            return Sym("x")
        if self.mode == "generic" and name in self.names:
            return Sym(name)
        raise UnknownSymbol(f"unknown symbol {name!r} at position {start}", symbol=name, position=start)


def parse(text: str, mode: str = "iterlog", names=()) -> ExprAst:
    """Parse text into an AST.  The shape of ln arguments is checked later,
    during normalisation."""
    if mode not in ("iterlog", "generic"):
        raise ValueError(f"unknown mode {mode!r}")
    return _Parser(text, mode, frozenset(names)).parse()


# ------------------------------------------------------------------ printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node) -> int:
    if isinstance(node, Bin):
        return _PREC[node.op]
    if isinstance(node, Pow):
        return 3
    return 4


def _rat_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def print_ast(node) -> str:
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Rat):
        return _rat_text(node.value)
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, AtomRef):
        return "@" + node.name
    if isinstance(node, Ln):
        return f"ln({print_ast(node.arg)})"
    if isinstance(node, Pow):
        b = print_ast(node.base)
        if _prec(node.base) < 4:
            b = f"({b})"
        return f"{b}^{node.exp}"
    if isinstance(node, Bin):
        p = _PREC[node.op]
        left = print_ast(node.left)
        if _prec(node.left) < p:
            left = f"({left})"
        right = print_ast(node.right)
        if _prec(node.right) <= p:
            right = f"({right})"
        elif node.op in "*/" and left[-1].isdigit() and right[0].isdigit():
            # "2/3" would lex as one rational
            right = f"({right})"
        return f"{left}{node.op}{right}"
    raise TypeError(f"not an AST node: {node!r}")


# ------------------------------------------------------------ normalisation


def _is_constant_tree(node) -> bool:
    if isinstance(node, (Sym, Ln)):
        return False
    if isinstance(node, Bin):
        return _is_constant_tree(node.left) and _is_constant_tree(node.right)
    if isinstance(node, Pow):
        return _is_constant_tree(node.base)
    return True


def _summands(node, sign: int, out: list) -> None:
    if isinstance(node, Bin) and node.op in ("+", "-"):
        _summands(node.left, sign, out)
        _summands(node.right, sign if node.op == "+" else -sign, out)
    else:
        out.append((sign, node))


def evaluate(node, symtab: Mapping | None = None) -> RatExpr:
    """Evaluate an AST into a reduced RatExpr over tower symbols."""
    symtab = symtab or {}
    if isinstance(node, Sym):
        if node.name == "x":
            return RatExpr.of(X)
        try:
            return RatExpr.of(symtab[node.name])
        except KeyError:
            raise UnknownSymbol(f"unknown symbol {node.name!r}", symbol=node.name) from None
    if isinstance(node, Rat):
        return RatExpr.of(GaussRat.coerce(node.value))
    if isinstance(node, Imag):
        return RatExpr.of(I)
    if isinstance(node, AtomRef):
        return RatExpr.of(make_const("@" + node.name))
    if isinstance(node, Ln):
        return RatExpr.of(ln_symbol(node, symtab))
    if isinstance(node, Pow):
        return evaluate(node.base, symtab) ** node.exp
    if isinstance(node, Bin):
        a = evaluate(node.left, symtab)
        b = evaluate(node.right, symtab)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if b.is_zero():
            from .errors import DivisionByZero
            raise DivisionByZero(f"division by zero in {print_ast(node)}")
        return a / b
    raise TypeError(f"not an AST node: {node!r}")


def ln_symbol(node: Ln, symtab: Mapping | None = None) -> LogSym:
    """Match ln(previous iterated log + constant) and return the LogSym."""
    parts: list = []
    _summands(node.arg, 1, parts)
    const = None
    inner = None
    for sign, t in parts:
        if _is_constant_tree(t):
            v = evaluate(t, symtab)
            c = v.num.const_value() / v.den.const_value()
            c = c if sign > 0 else -c
            const = c if const is None else const + c
        elif inner is None and sign > 0:
            inner = t
        else:
            raise NotIterLog(f"ln argument is not an iterated logarithm plus a constant: {print_ast(node)}",
                             subtree=print_ast(node))
    if inner is None:
        raise NotIterLog(f"ln of a constant: {print_ast(node)}", subtree=print_ast(node))
    v = evaluate(inner, symtab)
    y = _as_single_logsym(v)
    if y is None:
        raise NotIterLog(f"ln argument is not an iterated logarithm plus a constant: {print_ast(node)}",
                         subtree=print_ast(node))
    c = const if const is not None else GaussRat(0)
    return LogSym(y.vec + (c,))


def _as_single_logsym(v: RatExpr):
    if not v.den.is_one() or len(v.num.terms) != 1:
        return None
    (m, c), = v.num.terms.items()
    if c != ONE or len(m) != 1 or m[0][1] != 1:
        return None
    s = var_obj(m[0][0])
    return s if isinstance(s, LogSym) else None


def normalize_iterlog(ast) -> RatExpr:
    return evaluate(ast, {})


def parse_iterlog(text: str) -> RatExpr:
    return normalize_iterlog(parse(text, "iterlog"))


def parse_logsym(text: str) -> LogSym:
    v = parse_iterlog(text)
    y = _as_single_logsym(v)
    if y is None:
        raise NotIterLog(f"{text!r} is not a single iterated logarithm", subtree=text)
    return y


# ---------------------------------------------------------- output syntax


def _coeff_atomic(s: str) -> bool:
    return re.fullmatch(r"-?[0-9]+(/[0-9]+)?|i|@[A-Za-z_][A-Za-z0-9_]*", s) is not None


def _sym_text(s) -> str:
    return str(s)


def format_poly_expr(p: Poly) -> str:
    """Grammar-valid text for a polynomial in tower symbols."""
    if p.is_zero():
        return "0"
    key = grlex_keyfunc(p.vids())
    out = ""
    for idx, m in enumerate(sorted(p.terms, key=key, reverse=True)):
        c = p.terms[m]
        neg = isinstance(c, GaussRat) and c.b == 0 and c.a < 0
        mag = -c if neg else c
        mon = "*".join(_sym_text(var_obj(v)) + (f"^{e}" if e > 1 else "") for v, e in m)
        ct = const_text(mag)
        if not _coeff_atomic(ct):
            ct = f"({ct})"
        if not mon:
            body = ct
        elif mag == ONE:
            body = mon
        else:
            body = f"{ct}*{mon}"
        if idx == 0:
            if not neg:
                out = body
            elif mon and mag == ONE:
                out = f"-1*{mon}"
            else:
                out = f"-{body}"
        else:
            out += (" - " if neg else " + ") + body
    return out


def format_ratexpr(u: RatExpr) -> str:
    num = format_poly_expr(u.num)
    if u.den.is_one():
        return num
    den = format_poly_expr(u.den)
    if not _single_factor(u.num):
        num = f"({num})"
    if not _single_factor(u.den):
        den = f"({den})"
    return f"{num}/{den}"


def _single_factor(p: Poly) -> bool:
    if len(p.terms) != 1:
        return False
    (m, c), = p.terms.items()
    if not m:
        return _coeff_atomic(const_text(c)) and "/" not in const_text(c)
    return c == ONE and len(m) == 1


def const_literal(c) -> str:
    return const_text(c)


# ------------------------------------------------------------ tower files


@dataclass
class TowerDecl:
    name: str
    kind: str = "antiderivative"
    derivative: str | None = None
    A: str | None = None
    B: str | None = None
    C: str | None = None
    stage: int | None = None


@dataclass
class Tower:
    decls: list
    symbols: dict       # name -> GenSym
    table: dict         # symbol -> RatExpr (log-derivative for exponentials)
    kinds: dict         # symbol -> kind
    deps: dict          # symbol -> frozenset of symbols below it (transitive)
    triples: dict       # symbol -> (A, B, C) polynomials when declared

    def stage_of(self, s) -> int:
        return s.stage if isinstance(s, GenSym) else s.level


_RESERVED = {"x", "i", "ln"}


def load_tower(data) -> Tower:
    """Build a tower from a JSON-like sequence of declarations, in order."""
    from .errors import TowerError
    from .iterlog import iterlog_table, pi_chain

    if isinstance(data, dict):
        data = data.get("symbols", data.get("tower"))
    if not isinstance(data, list) or not data:
        raise TowerError("a tower file must hold a non-empty list of declarations")
    decls = []
    for raw in data:
        if not isinstance(raw, dict) or "name" not in raw:
            raise TowerError(f"malformed declaration {raw!r}")
        unknown = set(raw) - {"name", "kind", "derivative", "log_derivative", "A", "B", "C", "stage"}
        if unknown:
            raise TowerError(f"unknown fields {sorted(unknown)} in declaration {raw['name']!r}")
        deriv = raw.get("derivative", raw.get("log_derivative"))
        decls.append(TowerDecl(raw["name"], raw.get("kind", "antiderivative"), deriv,
                               raw.get("A"), raw.get("B"), raw.get("C"), raw.get("stage")))
    symbols: dict = {}
    table: dict = {}
    kinds: dict = {}
    deps: dict = {X: frozenset()}
    triples: dict = {}
    for idx, d in enumerate(decls):
        if d.name in _RESERVED or d.name in symbols or not _NAME.fullmatch(d.name):
            raise TowerError(f"invalid or duplicate symbol name {d.name!r}")
        if d.kind not in ("antiderivative", "exponential"):
            raise TowerError(f"unknown kind {d.kind!r} for {d.name!r}")
        names = list(symbols)

        def ev(text):
            return evaluate(parse(str(text), "generic", names), symbols)

        abc = None
        if d.A is not None or d.B is not None or d.C is not None:
            if d.kind != "antiderivative" or None in (d.A, d.B, d.C):
                raise TowerError(f"A, B, C data needs an antiderivative with all three parts: {d.name!r}")
            abc = tuple(ev(t) for t in (d.A, d.B, d.C))
            if any(not t.den.is_one() for t in abc):
                raise TowerError(f"A, B, C must be polynomials for {d.name!r}")
            from_abc = abc[0] / (abc[2] * abc[1])
        if d.derivative is not None:
            deriv = ev(d.derivative)
            if abc is not None and deriv != from_abc:
                raise TowerError(f"derivative of {d.name!r} disagrees with A/(C*B)")
        elif abc is not None:
            deriv = from_abc
        else:
            raise TowerError(f"no derivative given for {d.name!r}")
        mentioned = deriv.symbols()
        for s in mentioned:
            if isinstance(s, LogSym):
                for z, dz in iterlog_table([s]).items():
                    table.setdefault(z, dz)
                    deps.setdefault(z, frozenset(pi_chain(z)))
        below = set()
        for s in mentioned:
            below.add(s)
            below |= deps.get(s, frozenset())
        stage = d.stage
        if stage is None:
            stage = 1 + max((s.stage if isinstance(s, GenSym) else s.level for s in below), default=0)
        g = GenSym(d.name, d.kind, idx, stage)
        symbols[d.name] = g
        table[g] = deriv
        kinds[g] = d.kind
        deps[g] = frozenset(below)
        if abc is not None:
            triples[g] = tuple(t.num for t in abc)
    return Tower(decls, symbols, table, kinds, deps, triples)


def load_tower_file(path) -> Tower:
    import json
    from .errors import TowerError

    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise TowerError(f"cannot read tower file {path}: {exc}") from None
    return load_tower(data)


def parse_generic(text: str, tower: Tower) -> RatExpr:
    return evaluate(parse(text, "generic", tower.symbols), tower.symbols)
