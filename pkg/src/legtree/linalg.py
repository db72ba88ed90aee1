"""Exact linear algebra: Gauss-Jordan inversion over Fractions and a generic
division-free determinant usable for matrices of polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class SingularMatrixError(ArithmeticError):
    """Raised when an exact inverse does not exist."""


Matrix = list[list[Fraction]]


def identity_matrix(n: int) -> Matrix:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def _check_square(rows: Sequence[Sequence] ) -> int:
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("matrix must be square and non-empty")
    return n


def matrix_inverse(rows: Sequence[Sequence[Fraction | int]]) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    n = _check_square(rows)
    aug = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(rows)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        if pivot != col:
            aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r == col or not aug[r][col]:
                continue
            factor = aug[r][col]
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def matrix_multiply(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    n, m, k = len(a), len(b[0]), len(b)
    if any(len(r) != k for r in a):
        raise ValueError("inner dimensions do not match")
    return [
        [sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)]
        for i in range(n)
    ]


def determinant(rows: Sequence[Sequence]):
    """Determinant by Laplace expansion with column-subset memoization.

    Entries only need ``+``, ``-`` and ``*``, so this works for Fractions and
    for Polynomial entries alike (no division, unlike elimination).
    """
    n = _check_square(rows)
    # table[mask] = det of the top-popcount(mask) rows restricted to columns in mask
    table = {1 << c: rows[0][c] for c in range(n)}
    for r in range(1, n):
        new_table = {}
        for mask, minor in table.items():
            for c in range(n):
                bit = 1 << c
                if mask & bit:
                    continue
                # position of column c among the columns of the new mask
                pos = bin(mask & (bit - 1)).count("1")
                term = rows[r][c] * minor
                if (r + pos) % 2:
                    term = -term
                key = mask | bit
                if key in new_table:
                    new_table[key] = new_table[key] + term
                else:
                    new_table[key] = term
        table = new_table
    return table[(1 << n) - 1]
