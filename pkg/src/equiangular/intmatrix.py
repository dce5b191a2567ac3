"""Plain integer matrix arithmetic on tuples of tuples.

Everything here is exact; matrices are row-major sequences of rows of Python
ints, so entries may grow without bound.
"""
from __future__ import annotations

from fractions import Fraction
from operator import mul
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
MatrixLike = Sequence[Sequence[int]]


def freeze(m: MatrixLike) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def is_square(m: MatrixLike) -> bool:
    n = len(m)
    return all(len(row) == n for row in m)


def is_symmetric(m: MatrixLike) -> bool:
    n = len(m)
    return is_square(m) and all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def identity(n: int, scale: int = 1) -> Matrix:
    return tuple(tuple(scale if i == j else 0 for j in range(n)) for i in range(n))


def ones(n: int, m: int | None = None, scale: int = 1) -> Matrix:
    m = n if m is None else m
    return tuple((scale,) * m for _ in range(n))


def transpose(m: MatrixLike) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: MatrixLike, b: MatrixLike) -> Matrix:
    cols = transpose(b)
    return tuple(tuple(sum(map(mul, row, col)) for col in cols) for row in a)


def matvec(a: MatrixLike, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(map(mul, row, v)) for row in a)


def add(a: MatrixLike, b: MatrixLike) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(a: MatrixLike, c: int) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def add_diagonal(a: MatrixLike, c: int) -> Matrix:
    return tuple(tuple(x + c if i == j else x for j, x in enumerate(row)) for i, row in enumerate(a))


def kron(a: MatrixLike, b: MatrixLike) -> Matrix:
    rows = []
    for ra in a:
        for rb in b:
            rows.append(tuple(x * y for x in ra for y in rb))
    return tuple(rows)


def trace(m: MatrixLike) -> int:
    return sum(m[i][i] for i in range(len(m)))


def power(m: MatrixLike, k: int, modulus: int | None = None) -> Matrix:
    """``m ** k`` by repeated squaring, optionally reducing entries mod ``modulus``."""
    if k < 0:
        raise ValueError("negative power")
    n = len(m)
    result = identity(n)
    base = freeze(m)
    if modulus is not None:
        base = reduce_mod(base, modulus)
    while k:
        if k & 1:
            result = matmul(result, base)
            if modulus is not None:
                result = reduce_mod(result, modulus)
        k >>= 1
        if k:
            base = matmul(base, base)
            if modulus is not None:
                base = reduce_mod(base, modulus)
    return result


def reduce_mod(m: MatrixLike, modulus: int) -> Matrix:
    return tuple(tuple(x % modulus for x in row) for row in m)


def rref(m: MatrixLike) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (nonzero rows, pivot columns)."""
    rows = [[Fraction(x) for x in row] for row in m]
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: MatrixLike) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r
