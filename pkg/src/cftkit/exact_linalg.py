"""Fraction-free elimination over the rationals.

Matrices are plain lists of rows holding ``int`` or ``Fraction`` entries.
Rows are first scaled to integers, then Bareiss elimination keeps every
intermediate an exact integer.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence

Matrix = List[List[Fraction]]


def _integerize(rows: Sequence[Sequence]) -> tuple:
    """Scale each row by the lcm of its denominators. Returns the integer
    matrix and the product of scale factors (det multiplies by it)."""
    out = []
    scale = 1
    for row in rows:
        l = 1
        for x in row:
            l = math.lcm(l, Fraction(x).denominator)
        out.append([int(Fraction(x) * l) for x in row])
        scale *= l
    return out, scale


def _bareiss(M: List[List[int]]):
    """In-place Bareiss on an integer matrix. Returns (rank, sign, pivot_cols).

    After the call the last nonzero pivot equals det (up to sign) for a
    square full-rank input."""
    n_rows = len(M)
    n_cols = len(M[0]) if M else 0
    prev = 1
    sign = 1
    r = 0
    pivots = []
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        piv = M[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                M[i][j] = (M[i][j] * piv - M[i][c] * M[r][j]) // prev
            M[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, sign, pivots


def determinant(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in rows):
        raise ValueError("determinant needs a square matrix")
    M, scale = _integerize(rows)
    rank, sign, pivots = _bareiss(M)
    if rank < n:
        return Fraction(0)
    return Fraction(sign * M[n - 1][n - 1], scale)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    M, _ = _integerize(rows)
    r, _, _ = _bareiss(M)
    return r


def nullspace(rows: Sequence[Sequence], n_cols: int) -> List[List[Fraction]]:
    """Basis of {x : rows @ x = 0} in reduced form: one vector per free
    column, with 1 in that column and 0 in the other free columns."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    # reduced row echelon form over Fraction
    A = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][f]
        basis.append(v)
    return basis
