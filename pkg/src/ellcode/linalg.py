"""Exact Gaussian elimination over GF(p^m) on matrices of element codes.

Prime fields use a vectorised numpy path; extension fields fall back to
row operations on Python ints.  Pivots are taken at the first nonzero
column, top-most row first, so results are deterministic.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .field import ExtField

Matrix = list[list[int]]


def _rref_prime(rows: Sequence[Sequence[int]], p: int) -> tuple[Matrix, list[int]]:
    M = np.array(rows, dtype=np.int64) % p
    nrows, ncols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = pow(int(M[r, c]), -1, p)
        if inv != 1:
            M[r] = (M[r] * inv) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r].tolist(), pivots


def _rref_generic(F: ExtField, rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    M = [list(row) for row in rows]
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    add, sub, mul, inv = F.add, F.sub, F.mul, F.inv
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        iv = inv(M[r][c])
        if iv != 1:
            M[r] = [mul(v, iv) if v else 0 for v in M[r]]
        prow = M[r]
        for i in range(nrows):
            f = M[i][c]
            if i != r and f:
                row = M[i]
                M[i] = [sub(v, mul(f, w)) if w else v for v, w in zip(row, prow)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rref(F: ExtField, rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with zero rows dropped, and the pivot columns."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return [], []
    if F.m == 1:
        return _rref_prime(rows, F.p)
    return _rref_generic(F, rows)


def rank(F: ExtField, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[1])


def kernel(F: ExtField, rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of {v : M v = 0} (right null space) as row vectors."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    R, pivots = rref(F, rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(R, pivots):
            if row[fc]:
                v[pc] = F.neg(row[fc])
        basis.append(v)
    return basis


def solve(F: ExtField, A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """One solution of A x = b (free variables set to 0), or None."""
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(F, aug)
    if n in pivots:
        return None
    x = [0] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def matmul_transpose(F: ExtField, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    """A * B^T."""
    if F.m == 1 and A and B:
        a = np.array(A, dtype=np.int64)
        b = np.array(B, dtype=np.int64)
        p = F.p
        if p * p * a.shape[1] < (1 << 62):
            return ((a @ b.T) % p).tolist()
    return [[F.dot(r, s) for s in B] for r in A]


def same_row_space(F: ExtField, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> bool:
    ra, rb = rank(F, A), rank(F, B)
    return ra == rb and rank(F, list(A) + list(B)) == ra


def in_row_space(F: ExtField, rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    r = rank(F, rows)
    return rank(F, list(rows) + [list(v)]) == r
