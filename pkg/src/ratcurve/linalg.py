"""Dense exact linear algebra over QQ: determinant, rank, kernel.

Matrices are plain lists of rows.  Elimination is ordinary Gaussian
elimination over the rationals with the first-nonzero pivot rule, which is
deterministic and, with ``mpq`` coefficients, fast at the sizes we need.
"""
from __future__ import annotations

from typing import Sequence

from gmpy2 import mpq

from .poly import ZERO, qq


def to_matrix(rows: Sequence[Sequence]) -> list[list[mpq]]:
    return [[qq(x) for x in row] for row in rows]


def det(rows: Sequence[Sequence]) -> mpq:
    """Determinant of a square rational matrix."""
    a = [[mpq(x) for x in r] for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    acc = mpq(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        acc *= piv
        inv = 1 / piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f *= inv
                row, top = a[r], a[c]
                for k in range(c + 1, n):
                    if top[k]:
                        row[k] -= f * top[k]
    return acc * sign


def rref(rows: Sequence[Sequence]) -> tuple[list[list[mpq]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[mpq(x) for x in r] for r in rows]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def kernel(rows: Sequence[Sequence], ncols: int | None = None) -> list[list[mpq]]:
    """Basis of the right null space, one vector per free column (ascending)."""
    if not rows:
        n = ncols or 0
        return [[mpq(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(rows[0])
    red, piv = rref(rows)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        vec = [ZERO] * n
        vec[f] = mpq(1)
        for i, pc in enumerate(piv):
            vec[pc] = -red[i][f]
        basis.append(vec)
    return basis


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def identity(n: int) -> list[list[mpq]]:
    return [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
