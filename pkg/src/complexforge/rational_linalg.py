"""Exact Gaussian elimination over Q for small and sparse integer matrices."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def _sparse_rows(matrix) -> list:
    if hasattr(matrix, "tocsr"):
        m = matrix.tocsr()
        rows = []
        for i in range(m.shape[0]):
            lo, hi = m.indptr[i], m.indptr[i + 1]
            rows.append({int(j): Fraction(int(v)) if float(v).is_integer() else Fraction(v)
                         for j, v in zip(m.indices[lo:hi], m.data[lo:hi]) if v})
        return rows
    rows = []
    for r in matrix:
        rows.append({j: Fraction(v) for j, v in enumerate(r) if v})
    return rows


def exact_rank(matrix) -> int:
    """Rank over Q of an integer/rational matrix (dense, nested list or scipy sparse).

    Floats are converted exactly, so pass integer data when exactness matters.
    """
    if hasattr(matrix, "shape") and 0 in matrix.shape:
        return 0
    if isinstance(matrix, np.ndarray):
        matrix = matrix.tolist()
    rows = [r for r in _sparse_rows(matrix) if r]
    pivots: dict = {}  # pivot column -> normalised row
    rank = 0
    for row in rows:
        row = dict(row)
        # reduce against existing pivots until the leading column is free
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                lead = row[col]
                pivots[col] = {j: v / lead for j, v in row.items()}
                rank += 1
                break
            f = row[col]
            for j, v in piv.items():
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
    return rank


def solve_exact(A: Sequence[Sequence], b: Sequence) -> list:
    """Solve the square system A x = b over Q; raises ValueError if singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            raise ValueError("singular system")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [v * inv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [vr - f * vc for vr, vc in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]
