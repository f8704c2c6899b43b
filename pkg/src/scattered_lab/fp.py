"""Row reduction over the prime field F_p on integer numpy arrays."""

from __future__ import annotations

import numpy as np


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``M`` mod p and its pivot columns."""
    A = np.asarray(M, dtype=np.int64) % p
    A = A.copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - A[others, c][:, None] * A[r][None, :]) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, p: int) -> int:
    return len(rref(M, p)[1])


def solve(A, B, p: int) -> np.ndarray | None:
    """Unique ``X`` with ``A X = B`` mod p for square invertible A, else None."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, B.reshape(n, -1)]), p)
    if piv[:n] != list(range(n)):
        return None
    return R[:, n:].reshape(B.shape)


def in_rowspace(basis_rref: np.ndarray, pivots: list[int], vecs, p: int) -> np.ndarray:
    """Boolean mask: which rows of ``vecs`` lie in the span of an RREF basis."""
    V = np.asarray(vecs, dtype=np.int64) % p
    V = V.copy()
    for r, c in enumerate(pivots):
        V = (V - V[:, c][:, None] * basis_rref[r][None, :]) % p
    return ~V.any(axis=1)
