"""Exact integer/rational linear algebra used by the identity checks.

Vectors are integer numpy arrays (int64).  All rank, nullspace and solve
computations are delegated to FLINT through python-flint, so nothing here
ever touches floating point.  Every conversion into int64 is range-checked,
so an overflow raises instead of silently wrapping.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import flint
import numpy as np

_INT64_MAX = np.iinfo(np.int64).max


def as_int_array(values) -> np.ndarray:
    """Convert Python ints / FLINT integers to int64, refusing to wrap."""
    out = np.array([int(v) for v in np.ravel(values)], dtype=object)
    if out.size and max(abs(v) for v in out) > _INT64_MAX:
        raise OverflowError("integer entry does not fit in int64")
    return out.astype(np.int64).reshape(np.shape(values))


def to_fmpz(M) -> flint.fmpz_mat:
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError("expected a 2-d integer matrix")
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return flint.fmpz_mat(rows, cols)
    return flint.fmpz_mat([[int(x) for x in row] for row in M])


def rank(M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return to_fmpz(M).rank()


def primitive(v: np.ndarray) -> np.ndarray:
    """Scale an integer vector so its entries are coprime and the first
    nonzero entry is positive."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size == 0:
        return v.copy()
    g = 0
    for x in v[nz]:
        g = gcd(g, int(x))
    out = v // g
    if out[nz[0]] < 0:
        out = -out
    return out


def nullspace(M) -> np.ndarray:
    """Integer basis of the right kernel of M, one primitive vector per row."""
    M = np.asarray(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    Z, k = to_fmpz(M).nullspace()
    if k == 0:
        return np.zeros((0, cols), dtype=np.int64)
    table = Z.transpose().table()[:k]
    return np.array([primitive(as_int_array(row)) for row in table], dtype=np.int64)


def in_span(B, Y) -> bool:
    """True iff every column of Y lies in the column span of B."""
    B = np.asarray(B)
    Y = np.asarray(Y)
    if Y.ndim == 1:
        Y = Y[:, None]
    base = rank(B)
    return rank(np.hstack([B, Y])) == base


def independent_columns(B) -> list[int]:
    """Indices of a maximal independent set of columns (pivot columns)."""
    B = np.asarray(B)
    if B.size == 0:
        return []
    R, rk = flint.fmpq_mat(to_fmpz(B)).rref()
    pivots = []
    row = 0
    for c in range(B.shape[1]):
        if row < rk and R[row, c] != 0:
            pivots.append(c)
            row += 1
    return pivots


def solve_in_span(B, y) -> list[Fraction] | None:
    """Exact coefficients x with B x = y, or None if y is not in span(B).

    B must have full column rank.
    """
    B = np.asarray(B)
    y = np.asarray(y).reshape(-1, 1)
    k = B.shape[1]
    if k == 0:
        return [] if not np.any(y) else None
    Bz = to_fmpz(B)
    G = flint.fmpq_mat(Bz.transpose() * Bz)
    if G.det() == 0:
        raise ValueError("basis matrix must have full column rank")
    rhs = flint.fmpq_mat(Bz.transpose() * to_fmpz(y))
    x = G.solve(rhs)
    if flint.fmpq_mat(Bz) * x != flint.fmpq_mat(to_fmpz(y)):
        return None
    return [Fraction(int(x[i, 0].p), int(x[i, 0].q)) for i in range(k)]


class IncrementalBasis:
    """Exact basis that only accepts vectors increasing its rank."""

    def __init__(self, length: int):
        self.length = length
        self.vectors: list[np.ndarray] = []

    def __len__(self):
        return len(self.vectors)

    def add(self, v: np.ndarray) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if not np.any(v):
            return False
        if len(self.vectors) >= self.length:
            return False
        stacked = np.vstack(self.vectors + [v])
        if rank(stacked) > len(self.vectors):
            self.vectors.append(v)
            return True
        return False
