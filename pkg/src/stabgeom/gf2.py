"""Dense GF(2) linear algebra on uint8 numpy arrays.

Matrices are 2D arrays with entries in {0, 1}; all arithmetic is mod 2.
Sizes here are desk scale (a few hundred columns), so plain Gaussian
elimination is enough.
"""

from __future__ import annotations

import numpy as np


def as_gf2(mat) -> np.ndarray:
    a = np.asarray(mat, dtype=np.uint8) % 2
    if a.ndim != 2:
        raise ValueError("expected a 2D matrix")
    return a


def row_reduce(mat) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Returns (rref, pivot_columns); rref has one row per pivot (zero rows
    dropped), so len(pivots) == rank.
    """
    a = as_gf2(mat).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    rank = 0
    for col in range(cols):
        pivot_row = None
        for row in range(rank, rows):
            if a[row, col]:
                pivot_row = row
                break
        if pivot_row is None:
            continue
        if pivot_row != rank:
            a[[rank, pivot_row]] = a[[pivot_row, rank]]
        for row in range(rows):
            if row != rank and a[row, col]:
                a[row] ^= a[rank]
        pivots.append(col)
        rank += 1
        if rank == rows:
            break
    return a[:rank], pivots


def rank(mat) -> int:
    a = as_gf2(mat)
    if a.size == 0:
        return 0
    return len(row_reduce(a)[1])


def reduce_vector(rref: np.ndarray, pivots: list[int], vec) -> np.ndarray:
    """Reduce vec against an RREF basis; result is 0 iff vec is in the row space."""
    v = np.array(vec, dtype=np.uint8) % 2
    for i, col in enumerate(pivots):
        if v[col]:
            v ^= rref[i]
    return v


def in_row_space(rref: np.ndarray, pivots: list[int], vec) -> bool:
    return not reduce_vector(rref, pivots, vec).any()


def null_space(mat) -> np.ndarray:
    """Basis of {v : mat @ v = 0 mod 2}, one vector per row.

    Returned array has shape (cols - rank, cols); empty nullspace gives
    shape (0, cols).
    """
    a = as_gf2(mat)
    cols = a.shape[1]
    rref, pivots = row_reduce(a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for row, pc in enumerate(pivots):
            if rref[row, fc]:
                basis[i, pc] = 1
    return basis
