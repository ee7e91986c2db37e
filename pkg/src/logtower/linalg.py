"""Exact linear algebra: RREF over the constants, Hermite normal form over Z."""
from __future__ import annotations

from typing import Sequence

from .errors import LogtowerError
from .gaussian import ONE, ZERO


def rref(rows: Sequence[dict], cols: Sequence) -> list[dict]:
    """Reduced row echelon form of sparse rows {col: value} with column order ``cols``.

    Zero rows are dropped; pivots are 1.
    """
    work = [{c: v for c, v in r.items() if v} for r in rows]
    work = [r for r in work if r]
    out: list[dict] = []
    for col in cols:
        piv = None
        for idx, r in enumerate(work):
            if col in r:
                piv = idx
                break
        if piv is None:
            continue
        prow = work.pop(piv)
        inv = ONE / prow[col]
        prow = {c: v * inv for c, v in prow.items()}
        nxt = []
        for r in work:
            f = r.get(col)
            if f is not None:
                r = _axpy(r, prow, f)
            if r:
                nxt.append(r)
        work = nxt
        out = [_axpy(r, prow, r[col]) if col in r else r for r in out]
        out.append(prow)
    if work:
        raise LogtowerError("rows mention columns outside the given order")
    return out


def _axpy(r: dict, p: dict, f) -> dict:
    """r - f*p."""
    res = dict(r)
    for c, v in p.items():
        s = res.get(c, ZERO) - f * v
        if s:
            res[c] = s
        else:
            res.pop(c, None)
    return res


def invert(matrix: list[list]) -> list[list]:
    """Inverse of a square matrix over the constants (Gauss-Jordan)."""
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = ONE / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def hnf(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row-style Hermite normal form of the lattice spanned by integer rows.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    Zero rows are dropped, so the result is a basis of the lattice.
    """
    A = [list(r) for r in rows if any(r)]
    if not A:
        return []
    ncols = len(A[0])
    out: list[list[int]] = []
    r0 = 0
    for col in range(ncols):
        # Euclid down the column among rows r0..
        while True:
            nz = [i for i in range(r0, len(A)) if A[i][col]]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(A[i][col]))
            A[r0], A[k] = A[k], A[r0]
            done = True
            for i in range(r0 + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[r0][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r0])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if r0 < len(A) and A[r0][col]:
            if A[r0][col] < 0:
                A[r0] = [-a for a in A[r0]]
            p = A[r0][col]
            for i in range(r0):
                q = A[i][col] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r0])]
            r0 += 1
            if r0 == len(A):
                break
    out = [tuple(r) for r in A[:r0]]
    return out
