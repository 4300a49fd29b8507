"""Gaussian elimination over a :class:`~lrcodes.gf.Field`.

Matrices are numpy int64 arrays of element codes.
"""

from __future__ import annotations

import numpy as np

from .gf import Field


def matmul(F: Field, A, B, chunk: int = 1 << 22) -> np.ndarray:
    """Matrix product over ``F``."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    B = np.atleast_2d(np.asarray(B, dtype=np.int64))
    a, k = A.shape
    k2, n = B.shape
    if k != k2:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = np.zeros((a, n), dtype=np.int64)
    if k == 0:
        return out
    step = max(1, chunk // max(1, k * n))
    for s in range(0, a, step):
        blk = F.mul(A[s:s + step, :, None], B[None, :, :])
        out[s:s + step] = F.sum(blk, axis=1)
    return out


def _eliminate(F: Field, M: np.ndarray, reduced: bool):
    M = np.array(M, dtype=np.int64, copy=True)
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        M[r, c:] = F.mul(F.inv(M[r, c]), M[r, c:])
        lo = 0 if reduced else r + 1
        col = M[lo:, c].copy()
        if lo <= r:
            col[r - lo] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            idx = hit + lo
            M[idx, c:] = F.sub(M[idx, c:], F.mul(col[hit, None], M[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return M, pivots


def rref(F: Field, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    return _eliminate(F, A, reduced=True)


def rank(F: Field, A) -> int:
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    if A.size == 0:
        return 0
    return len(_eliminate(F, A, reduced=False)[1])


def solve(F: Field, A, b) -> np.ndarray | None:
    """One solution ``x`` of ``A x = b``, free variables set to zero; ``None`` if inconsistent."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    R, piv = rref(F, np.hstack([A, b]))
    ncols = A.shape[1]
    if piv and piv[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, -1]
    return x


def nullspace(F: Field, A) -> np.ndarray:
    """Basis (as rows) of ``{x : A x = 0}``."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    R, piv = rref(F, A)
    n = A.shape[1]
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for j, f in enumerate(free):
        out[j, f] = 1
        for i, c in enumerate(piv):
            out[j, c] = F.neg(R[i, f])
    return out


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis.

    ``add`` reduces a vector against the current basis and keeps it when it is
    independent; this yields the rank profile of a row sequence in one pass.
    """

    def __init__(self, F: Field, ncols: int):
        self.F = F
        self.ncols = ncols
        self._rows = np.zeros((min(ncols, 64), ncols), dtype=np.int64)
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.pivots)

    @property
    def rows(self) -> np.ndarray:
        return self._rows[:len(self.pivots)]

    def reduce(self, v) -> np.ndarray:
        F = self.F
        v = np.asarray(v, dtype=np.int64)
        if not self.pivots:
            return v.copy()
        coeffs = v[self.pivots]
        nz = np.flatnonzero(coeffs)
        if nz.size == 0:
            return v.copy()
        comb = F.sum(F.mul(coeffs[nz, None], self.rows[nz]), axis=0)
        return F.sub(v, comb)

    def add(self, v) -> bool:
        F = self.F
        w = self.reduce(v)
        nz = np.flatnonzero(w)
        if nz.size == 0:
            return False
        c = int(nz[0])
        w = F.mul(F.inv(w[c]), w)
        r = len(self.pivots)
        rows = self.rows
        hit = np.flatnonzero(rows[:, c])
        if hit.size:
            rows[hit] = F.sub(rows[hit], F.mul(rows[hit, c][:, None], w[None, :]))
        if r == self._rows.shape[0]:
            grown = np.zeros((min(self.ncols, 2 * r), self.ncols), dtype=np.int64)
            grown[:r] = self._rows
            self._rows = grown
        self._rows[r] = w
        self.pivots.append(c)
        return True


def independent_rows(F: Field, A) -> list[int]:
    """Indices of the first maximal independent subset of rows, in order."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    basis = EchelonBasis(F, A.shape[1])
    return [i for i, row in enumerate(A) if basis.add(row)]
