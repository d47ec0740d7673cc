"""Exact linear algebra over Q, plus modular rank shortcuts for integer matrices.

For an integer matrix the rank modulo a prime never exceeds the rank over
Q, so a full-column-rank result mod p is a proof of full column rank. The
exact Fraction routines are the fallback whenever that shortcut is
inconclusive.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

MOD_PRIME = 2147483647  # 2^31 - 1; products of residues fit in int64


def _as_residues(A) -> np.ndarray:
    A = np.asarray(A)
    if A.dtype == object:
        return np.array([[int(x) % MOD_PRIME for x in row] for row in A], dtype=np.int64).reshape(A.shape)
    return np.mod(A.astype(np.int64), MOD_PRIME)


def mod_row_basis(A) -> list:
    """Indices of rows forming a basis of the row space modulo MOD_PRIME.

    Rows independent mod p are independent over Q.
    """
    M = _as_residues(A).copy()
    m, n = M.shape
    chosen = []
    alive = np.ones(m, dtype=bool)
    for c in range(n):
        cand = np.nonzero(alive & (M[:, c] != 0))[0]
        if cand.size == 0:
            continue
        r = int(cand[0])
        chosen.append(r)
        alive[r] = False
        inv = pow(int(M[r, c]), MOD_PRIME - 2, MOD_PRIME)
        piv = (M[r] * inv) % MOD_PRIME
        others = np.nonzero(alive & (M[:, c] != 0))[0]
        if others.size:
            f = M[others, c][:, None]
            M[others] = (M[others] - (f * piv[None, :]) % MOD_PRIME) % MOD_PRIME
    return chosen


def mod_rank(A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(mod_row_basis(A))


def rref(rows, ncols=None):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.
    """
    M = [[Fraction(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        k = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        pv = M[r][c]
        if pv != 1:
            M[r] = [x / pv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def exact_rank(rows, ncols=None) -> int:
    return len(rref(rows, ncols)[1])


def has_full_column_rank(A) -> bool:
    """Rank of an integer matrix equals its column count (mod-p fast path)."""
    A = np.asarray(A)
    n = A.shape[1]
    if A.shape[0] < n:
        return False
    if mod_rank(A) == n:
        return True
    return exact_rank(A.tolist(), n) == n


def nullspace(rows, ncols) -> list:
    """Basis of {x : rows @ x = 0}, one vector per free column (identity there)."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve_affine(E, f, ncols):
    """General solution of ``E x = f`` as ``(x0, N)`` with ``x = x0 + N z``.

    ``N`` is an ncols x k list-of-rows matrix. Returns None when the system
    is inconsistent.
    """
    if not E:
        return [Fraction(0)] * ncols, [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    aug = [list(row) + [fv] for row, fv in zip(E, f)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x0 = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        x0[pc] = R[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    N = [[Fraction(0)] * len(free) for _ in range(ncols)]
    for k, fc in enumerate(free):
        N[fc][k] = Fraction(1)
        for i, pc in enumerate(pivots):
            N[pc][k] = -R[i][fc]
    return x0, N


def inverse(M) -> list:
    """Inverse of a square nonsingular rational matrix."""
    n = len(M)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(R) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]
