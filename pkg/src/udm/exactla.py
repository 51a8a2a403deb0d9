"""Exact linear algebra over rationals.

Dense Gaussian elimination on lists of ``Fraction`` rows.  Everything here
is exact; no floating point enters rank or determinant decisions.  Matrices
are small (desk scale), so no attempt is made at asymptotic cleverness.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = list[Fraction]
Matrix = list[Row]


def to_fraction_matrix(rows: Iterable[Iterable]) -> Matrix:
    """Copy *rows* into a rectangular list-of-lists of Fractions."""
    out = [[Fraction(x) for x in row] for row in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> Matrix:
    return [[Fraction(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise ValueError("dimension mismatch in mat_mul")
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                row = out[i]
                for j in range(m):
                    row[j] += x * bt[j]
    return out


def transpose(a: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def mat_rank(rows: Iterable[Iterable]) -> int:
    """Rank by fraction-exact Gaussian elimination."""
    m = to_fraction_matrix(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def mat_det(rows: Iterable[Iterable]) -> Fraction:
    """Determinant of a square matrix, exact."""
    m = to_fraction_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                f = m[r][col] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def mat_inverse(rows: Iterable[Iterable]) -> Matrix:
    """Inverse of a square nonsingular matrix via Gauss-Jordan."""
    m = to_fraction_matrix(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("inverse of a non-square matrix")
    aug = [m[i] + identity(n)[i] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_nullity(rows: Iterable[Iterable]) -> int:
    m = to_fraction_matrix(rows)
    if not m:
        return 0
    return len(m[0]) - mat_rank(m)
