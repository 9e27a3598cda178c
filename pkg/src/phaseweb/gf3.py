"""Dense linear algebra over GF(3) by Gaussian elimination.

Matrices are numpy integer arrays with entries in {0, 1, 2}. The inverse of
a nonzero element is itself (1*1 = 2*2 = 1 mod 3), which keeps pivoting
trivial.
"""

from __future__ import annotations

import numpy as np


def as_gf3(M) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % 3


def row_echelon(M):
    """Reduced row-echelon form over GF(3).

    Returns ``(R, pivot_cols)``; ``len(pivot_cols)`` is the rank.
    """
    R = as_gf3(M).copy()
    if R.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.nonzero(R[row:, col])[0]
        if nz.size == 0:
            continue
        p = row + nz[0]
        if p != row:
            R[[row, p]] = R[[p, row]]
        # scale pivot to 1; 2 is its own inverse
        R[row] = R[row] * R[row, col] % 3
        for r in range(m):
            if r != row and R[r, col]:
                R[r] = (R[r] - R[r, col] * R[row]) % 3
        pivots.append(col)
        row += 1
    return R, pivots


def rank(M) -> int:
    M = as_gf3(M)
    if M.size == 0:
        return 0
    return len(row_echelon(M)[1])


def nullity(M) -> int:
    M = as_gf3(M)
    return M.shape[1] - rank(M)


def kernel_basis(M) -> np.ndarray:
    """Rows spanning the right null space of ``M`` (shape ``(nullity, cols)``)."""
    M = as_gf3(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = row_echelon(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, p in enumerate(pivots):
            basis[k, p] = -R[r, f] % 3
    return basis


def matmul(A, B) -> np.ndarray:
    return as_gf3(A) @ as_gf3(B) % 3
