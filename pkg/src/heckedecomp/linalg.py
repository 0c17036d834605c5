"""Small dense matrix helpers over exact rings.

Matrices are lists of row lists.  Multiplication only needs ``+`` and ``*``
so it works for both cyclotomic numbers and Laurent polynomials; the
elimination routines need a field and are written for ``Cyclotomic``.
"""

from __future__ import annotations

from typing import Sequence

from .exactnum import ONE, ZERO, Cyclotomic

Matrix = list[list]


def identity(n: int, one=ONE, zero=ZERO) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row_a = a[i]
        row = [None] * m
        for j in range(m):
            acc = None
            for t in range(k):
                x = row_a[t]
                if not x:
                    continue
                y = b[t][j]
                if not y:
                    continue
                acc = x * y if acc is None else acc + x * y
            row[j] = acc if acc is not None else b[0][j] * 0
        out.append(row)
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def trace(a: Matrix):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def is_scalar(a: Matrix):
    """Return the scalar c if a == c*I, else None."""
    c = a[0][0]
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i == j:
                if x != c:
                    return None
            elif x:
                return None
    return c


def sub_scalar(a: Matrix, lam) -> Matrix:
    return [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(a)]


def row_reduce(rows: list[list[Cyclotomic]]) -> tuple[list[list[Cyclotomic]], list[int]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan, exact)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y if y else x for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: list[list[Cyclotomic]]) -> int:
    return len(row_reduce(rows)[1])


def nullspace(a: Matrix) -> list[list[Cyclotomic]]:
    """Basis of {v : a v = 0}, one vector per free column, normalized to 1 there."""
    if not a:
        return []
    ncols = len(a[0])
    red, pivots = row_reduce(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve_left(basis: list[list[Cyclotomic]], target: list[Cyclotomic]):
    """Coefficients c with sum c_i basis_i == target, or None if impossible.

    The basis vectors must be linearly independent.
    """
    k = len(basis)
    if k == 0:
        return [] if not any(target) else None
    n = len(target)
    # columns are basis vectors, augmented with target
    aug = [[basis[i][j] for i in range(k)] + [target[j]] for j in range(n)]
    red, pivots = row_reduce(aug)
    if k in pivots:
        return None
    coeffs = [ZERO] * k
    for row, pc in zip(red, pivots):
        coeffs[pc] = row[k]
    return coeffs


def normalize_line(v: list[Cyclotomic]) -> list[Cyclotomic]:
    """Scale so the first nonzero coordinate is 1."""
    lead = next(x for x in v if x)
    inv = lead.inverse()
    return [x * inv for x in v]
