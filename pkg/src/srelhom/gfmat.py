"""Dense exact linear algebra over a prime field F_p.

Matrices are numpy int64 arrays with entries reduced into [0, p).  Shapes
with zero rows or zero columns are legal everywhere; they show up
constantly as zero modules and empty syzygies.

Every routine is deterministic: pivots are always the first nonzero entry
scanning down a column, so echelon forms, nullspace bases and particular
solutions are canonical functions of the input.  Nothing here mutates its
arguments.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "mat",
    "zeros",
    "identity",
    "modinv",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "inverse",
    "column_space",
    "in_column_span",
    "extend_to_basis",
]


def mat(rows, p: int) -> np.ndarray:
    """Build an int64 matrix reduced mod p from nested lists or an array."""
    a = np.array(rows, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return np.mod(a, p)


def zeros(nrows: int, ncols: int) -> np.ndarray:
    return np.zeros((nrows, ncols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def modinv(a: int, p: int) -> int:
    a = a % p
    if a == 0:
        raise ZeroDivisionError("inverse of 0 mod %d" % p)
    return pow(a, p - 2, p)


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form of a mod p.

    Returns (R, pivots) where pivots[i] is the column of the leading 1 in
    row i.  Rows below the pivot rows are zero.
    """
    r = np.mod(a.astype(np.int64, copy=True), p)
    nrows, ncols = r.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        pivot_row = row + int(nz[0])
        if pivot_row != row:
            r[[row, pivot_row]] = r[[pivot_row, row]]
        r[row] = (r[row] * modinv(int(r[row, col]), p)) % p
        others = np.nonzero(r[:, col])[0]
        others = others[others != row]
        if others.size:
            r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r, tuple(pivots)


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of {x : a @ x = 0 mod p}, as matrix columns.

    Each free column of the echelon form contributes one basis vector with
    a 1 in that coordinate, so the basis is in "column echelon" shape and
    is unique for a given input.
    """
    r, pivots = rref(a, p)
    ncols = a.shape[1]
    free = [j for j in range(ncols) if j not in pivots]
    basis = zeros(ncols, len(free))
    for k, j in enumerate(free):
        basis[j, k] = 1
        for i, c in enumerate(pivots):
            basis[c, k] = (-r[i, j]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Particular solution X of a @ X = b mod p, or None if inconsistent.

    b may be a vector or a matrix; columns are solved jointly.  Free
    variables are set to 0, making the solution canonical.
    """
    vec_in = b.ndim == 1
    bm = b.reshape(-1, 1) if vec_in else b
    if a.shape[0] != bm.shape[0]:
        raise ValueError("shape mismatch in solve: %s vs %s" % (a.shape, bm.shape))
    ncols = a.shape[1]
    aug = np.hstack([np.mod(a, p), np.mod(bm, p)])
    r, pivots = rref(aug, p)
    if any(c >= ncols for c in pivots):
        return None
    x = zeros(ncols, bm.shape[1])
    for i, c in enumerate(pivots):
        x[c] = r[i, ncols:]
    return x[:, 0] if vec_in else x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("inverse of non-square matrix")
    x = solve(a, identity(n), p)
    if x is None or rank(a, p) != n:
        raise ValueError("matrix is singular mod %d" % p)
    return x


def column_space(a: np.ndarray, p: int) -> np.ndarray:
    """Canonical basis of the column span: the pivot columns of a."""
    _, pivots = rref(a, p)
    return np.mod(a[:, list(pivots)], p)


def in_column_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve(basis, v, p) is not None


def extend_to_basis(cols: np.ndarray, p: int) -> np.ndarray:
    """Standard basis vectors completing independent columns to a basis.

    Greedy over e_0, e_1, ...: deterministic.  Returns an n x (n - k)
    matrix D such that [cols | D] is invertible.
    """
    n, k = cols.shape
    if rank(cols, p) != k:
        raise ValueError("columns are not independent")
    current = cols
    extra = []
    for j in range(n):
        if current.shape[1] == n:
            break
        e = zeros(n, 1)
        e[j, 0] = 1
        cand = np.hstack([current, e])
        if rank(cand, p) == current.shape[1] + 1:
            current = cand
            extra.append(e)
    return np.hstack(extra) if extra else zeros(n, 0)
