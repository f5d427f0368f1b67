"""Dense linear algebra over the prime field F_p.

Matrices are int64 numpy arrays with entries in [0, p).  The elimination
kernel is compiled with numba and skips zero entries, so block-structured
operator matrices (which is what the oracle mostly produces) are cheap.
"""

from __future__ import annotations

import numpy as np
from numba import njit


def inverses(p: int) -> np.ndarray:
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


@njit(cache=True)
def _eliminate(M, p, inv, full):
    rows, cols = M.shape
    piv = np.empty(min(rows, cols), dtype=np.int64)
    nz = np.empty(cols, dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if M[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(c, cols):
                t = M[k, j]
                M[k, j] = M[r, j]
                M[r, j] = t
        s = inv[M[r, c]]
        cnt = 0
        for j in range(c, cols):
            if M[r, j] != 0:
                if s != 1:
                    M[r, j] = (M[r, j] * s) % p
                nz[cnt] = j
                cnt += 1
        start = 0 if full else r + 1
        for i in range(start, rows):
            if i == r:
                continue
            a = M[i, c]
            if a == 0:
                continue
            for t in range(cnt):
                j = nz[t]
                M[i, j] = (M[i, j] - a * M[r, j]) % p
        piv[r] = c
        r += 1
    return r, piv[:r]


def _prep(M, p):
    A = np.ascontiguousarray(np.asarray(M, dtype=np.int64) % p)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    return A


def rank(M, p: int) -> int:
    A = _prep(M, p)
    if A.size == 0:
        return 0
    if A.shape[0] > A.shape[1]:
        A = np.ascontiguousarray(A.T)
    r, _ = _eliminate(A, p, inverses(p), False)
    return int(r)


def rref(M, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = _prep(M, p)
    if A.size == 0:
        return A[:0], np.zeros(0, dtype=np.int64)
    r, piv = _eliminate(A, p, inverses(p), True)
    return A[:r].copy(), piv.copy()


def row_basis(M, p: int) -> np.ndarray:
    return rref(M, p)[0]


def nullspace(M, p: int) -> np.ndarray:
    """Rows spanning {v : M v = 0}, in reduced form."""
    A = _prep(M, p)
    ncols = A.shape[1]
    R, piv = rref(A, p)
    free = [c for c in range(ncols) if c not in set(piv.tolist())]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-R[i, c]) % p
    return out


class Subspace:
    """A subspace of F_p^dim held by its reduced basis.

    Coordinates of a vector in the span are read off the pivot columns,
    which is the whole point of keeping the basis reduced.
    """

    def __init__(self, vectors, p: int, dim: int | None = None):
        V = np.asarray(vectors, dtype=np.int64)
        if V.ndim == 1:
            V = V.reshape(1, -1) if V.size else np.zeros((0, dim or 0), dtype=np.int64)
        self.p = p
        self.basis, self.pivots = rref(V, p) if V.shape[0] else (V.copy(), np.zeros(0, dtype=np.int64))
        self.ambient = V.shape[1] if dim is None else dim

    def __len__(self):
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def coords(self, vectors) -> np.ndarray:
        """Coordinates of vectors (rows) that are assumed to lie in the span."""
        V = np.asarray(vectors, dtype=np.int64)
        return V[..., self.pivots] % self.p

    def coords_checked(self, vectors) -> np.ndarray:
        c = self.coords(vectors)
        back = (c @ self.basis) % self.p
        if not np.array_equal(back, np.asarray(vectors) % self.p):
            raise ValueError("vector outside subspace")
        return c

    def contains(self, vectors) -> bool:
        V = np.atleast_2d(np.asarray(vectors, dtype=np.int64)) % self.p
        back = (self.coords(V) @ self.basis) % self.p
        return bool(np.array_equal(back, V))

    def combine(self, coeffs) -> np.ndarray:
        return (np.asarray(coeffs, dtype=np.int64) @ self.basis) % self.p


def matmul(A, B, p: int) -> np.ndarray:
    """Product mod p through float BLAS when the entries allow it exactly."""
    A = np.asarray(A)
    B = np.asarray(B)
    k = A.shape[-1]
    if k * (p - 1) ** 2 < 2 ** 52:
        out = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
        return np.remainder(out, p).astype(np.int64)
    return (A.astype(np.int64) @ B.astype(np.int64)) % p


def inverse(M, p: int) -> np.ndarray:
    A = _prep(M, p)
    n = A.shape[0]
    if A.shape[1] != n:
        raise ValueError("matrix is not square")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref(aug, p)
    if R.shape[0] < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:].copy()
