"""Exact linear algebra over Q for sparse integer vectors.

Vectors are ``dict`` column -> integer.  Elimination is fraction-free with
row contents divided out, so entries stay small for the 0/±1 matrices that
come out of the Hom computations.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence

Vec = Dict[int, int]


def _primitive(row: Vec) -> Vec:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def rank(rows: Sequence[Vec]) -> int:
    """Rank over Q of the given sparse integer row vectors."""
    pivots: Dict[int, Vec] = {}
    r = 0
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = _primitive(row)
                r += 1
                break
            a, b = piv[col], row[col]
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                nv = new.get(k, 0) - b * v
                if nv:
                    new[k] = nv
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
    return r


def in_span(rows: Sequence[Vec], v: Vec) -> bool:
    return rank(list(rows) + [v]) == rank(rows)


def nullspace(images: Sequence[Vec]) -> List[List[Fraction]]:
    """Basis of ``{c : sum_k c_k * images[k] = 0}`` as dense rational vectors.

    ``images[k]`` is the image of the k-th domain basis vector.
    """
    m = len(images)
    cols = sorted({k for img in images for k in img})
    # matrix with one row per codomain coordinate, one column per domain vector
    mat = [[Fraction(images[j].get(c, 0)) for j in range(m)] for c in cols]
    pivot_cols = []
    r = 0
    for j in range(m):
        p = next((i for i in range(r, len(mat)) if mat[i][j] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        pv = mat[r][j]
        mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][j] != 0:
                f = mat[i][j]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivot_cols.append(j)
        r += 1
    free = [j for j in range(m) if j not in pivot_cols]
    basis = []
    for fj in free:
        v = [Fraction(0)] * m
        v[fj] = Fraction(1)
        for i, pj in enumerate(pivot_cols):
            v[pj] = -mat[i][fj]
        basis.append(v)
    return basis


def det(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by Bareiss elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def inverse_unimodular(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Exact inverse of an integer matrix with determinant ±1.

    Fraction-free Gauss-Jordan: every division is exact, and at the end each
    diagonal entry equals the determinant while the right block is ``det * A^-1``.
    """
    n = len(matrix)
    aug = [list(map(int, row)) + [int(i == j) for j in range(n)] for i, row in enumerate(matrix)]
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if aug[i][k] != 0), None)
            if sw is None:
                raise ValueError("matrix is singular")
            aug[k], aug[sw] = aug[sw], aug[k]
        rk = aug[k]
        akk = rk[k]
        for i in range(n):
            if i == k:
                continue
            ri = aug[i]
            aik = ri[k]
            aug[i] = [(akk * x - aik * y) // prev for x, y in zip(ri, rk)]
        prev = akk
    d = aug[0][0]
    if abs(d) != 1:
        raise ValueError(f"matrix has determinant {d}, not ±1")
    return [[x * d for x in row[n:]] for row in aug]
