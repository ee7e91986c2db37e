"""Iterated logarithms: projections, derivatives, essential elements,
the closure set with its levelled partition and pi-base, and the two towers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .constfield import vec_last, vec_project
from .errors import EmptyInput, NotIterLogExpression
from .multipoly import X, LogSym, RatExpr, sorted_syms, sym


def pi(y: LogSym, k: int = 1) -> LogSym:
    """pi^k(y); projecting past level 0 stays at x."""
    if k == 0 or y.level == 0:
        return y
    return LogSym(vec_project(y.vec, k))


def psi(y: LogSym):
    return vec_last(y.vec)


def pi_set(S: Iterable[LogSym], k: int = 1) -> frozenset:
    return frozenset(pi(y, k) for y in S)


def pi_chain(y: LogSym) -> list[LogSym]:
    """pi(y), pi^2(y), ..., x (empty for x itself)."""
    return [pi(y, k) for k in range(1, y.level + 1)]


def log_derivative(y: LogSym) -> RatExpr:
    den = RatExpr.of(1)
    cur = y
    while cur.level:
        inner = pi(cur)
        den = den * (RatExpr.of(sym(inner)) + RatExpr.of(psi(cur)))
        cur = inner
    return den.inverse()


def iterlog_table(syms: Iterable[LogSym]) -> dict:
    """Derivation table covering the given symbols and everything below them."""
    table = {}
    for y in syms:
        for z in [y] + pi_chain(y):
            if z not in table:
                table[z] = log_derivative(z)
    return table


def _require_logsyms(syms) -> None:
    for s in syms:
        if not isinstance(s, LogSym):
            raise NotIterLogExpression(f"symbol {s} is not an iterated logarithm", symbol=str(s))


@dataclass(frozen=True)
class EssentialSet:
    symbols: frozenset
    owner: RatExpr | None = None

    def sorted(self) -> list:
        return sorted_syms(self.symbols)


def essential_elements(u) -> EssentialSet:
    u = RatExpr.of(u)
    # u is reduced, so a symbol matters exactly when it occurs in P or Q
    return EssentialSet(frozenset(u.symbols()), u)


@dataclass(frozen=True)
class ClosureSet:
    closure: frozenset
    n: int
    partition: tuple
    pi_base: frozenset
    essential: frozenset = field(default=frozenset())


def closure(E: Iterable[LogSym]) -> ClosureSet:
    E = frozenset(E)
    if not E:
        raise EmptyInput("closure of the empty set")
    _require_logsyms(E)
    n = max(y.level for y in E)
    big = set()
    for k in range(n + 1):
        big |= pi_set(E, k)
    projected = set()
    for k in range(1, max(n, 1) + 1):
        projected |= pi_set(E, k)
    base = frozenset(E - projected)
    parts = tuple(frozenset(y for y in big if y.level == i) for i in range(n + 1))
    return ClosureSet(frozenset(big), n, parts, base, E)


@dataclass(frozen=True)
class TowerReport:
    levelled: tuple  # K_0, ..., K_n as frozensets of symbols
    pi_tower: tuple  # P_0, ..., P_n


def towers(c: ClosureSet) -> TowerReport:
    K, P = [], []
    acc = set()
    for i in range(c.n + 1):
        acc |= c.partition[i]
        K.append(frozenset(acc))
        Pi = {X}
        for j in range(i + 1):
            Pi |= pi_set(c.pi_base, c.n - j)
        P.append(frozenset(Pi))
    for Ki, Pi in zip(K, P):
        assert Pi <= Ki, "pi-tower field escapes the levelled tower"
    return TowerReport(tuple(K), tuple(P))
