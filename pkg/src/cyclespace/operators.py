"""Adjacency operator of C_m^N and its pieces as exact integer matrices.

Matrices act on vertex functions indexed by a :class:`VertexTable`: entry
``(v, w)`` is the weight with which ``f(w)`` contributes to ``(Xf)(v)``.
With that convention the outer adjacency ``A_+`` (pushing values one step
away from the origin) is lower triangular in the table order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .group import LevelSignature, VertexTable, as_signature, normalize

_GUARD = 2**62


def _canonical(matrix) -> sp.csr_matrix:
    M = sp.csr_matrix(matrix, dtype=np.int64)
    M.sum_duplicates()
    M.eliminate_zeros()
    M.sort_indices()
    return M


def _inf_norm(M: sp.csr_matrix) -> int:
    if M.nnz == 0:
        return 0
    return int(np.abs(M).sum(axis=1).max())


@dataclass(frozen=True, eq=False)
class IntOperator:
    """Sparse integer matrix with optional level-set support annotations."""

    matrix: sp.csr_matrix = field(repr=False)
    domain: frozenset | None = None
    codomain: frozenset | None = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", _canonical(self.matrix))

    @classmethod
    def identity(cls, n: int) -> IntOperator:
        return cls(sp.identity(n, dtype=np.int64, format="csr"))

    @classmethod
    def zero(cls, n: int, domain=None, codomain=None) -> IntOperator:
        return cls(sp.csr_matrix((n, n), dtype=np.int64), domain, codomain)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def is_zero(self) -> bool:
        return self.matrix.nnz == 0

    @property
    def T(self) -> IntOperator:
        return IntOperator(self.matrix.T, self.codomain, self.domain)

    def __matmul__(self, other):
        if isinstance(other, IntOperator):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"dimension mismatch {self.shape} @ {other.shape}")
            if _inf_norm(self.matrix) * _inf_norm(other.matrix) >= _GUARD:
                raise OverflowError("integer operator product may overflow int64")
            return IntOperator(self.matrix @ other.matrix, other.domain, self.codomain)
        x = np.asarray(other)
        if x.dtype.kind not in "iu":
            return self.matrix @ x
        if x.size and _inf_norm(self.matrix) * int(np.abs(x).max()) >= _GUARD:
            raise OverflowError("integer operator application may overflow int64")
        return np.asarray(self.matrix @ x.astype(np.int64), dtype=np.int64)

    def _check_shape(self, other: IntOperator) -> None:
        if self.shape != other.shape:
            raise ValueError(f"dimension mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: IntOperator) -> IntOperator:
        self._check_shape(other)
        return IntOperator(self.matrix + other.matrix)

    def __sub__(self, other: IntOperator) -> IntOperator:
        self._check_shape(other)
        return IntOperator(self.matrix - other.matrix)

    def __neg__(self) -> IntOperator:
        return IntOperator(-self.matrix, self.domain, self.codomain)

    def __rmul__(self, c: int) -> IntOperator:
        return IntOperator(int(c) * self.matrix, self.domain, self.codomain)

    def restrict(self, table: VertexTable, codomain=None, domain=None) -> IntOperator:
        """Two-sided multiplication by 0/1 level-set projectors.

        ``codomain`` / ``domain`` are iterables of signatures; ``None`` keeps
        that side unrestricted.
        """
        M = self.matrix
        dom = cod = None
        if codomain is not None:
            cod = frozenset(as_signature(table.m, s) for s in codomain)
            M = sp.diags(table.mask(*cod).astype(np.int64)) @ M
        if domain is not None:
            dom = frozenset(as_signature(table.m, s) for s in domain)
            M = M @ sp.diags(table.mask(*dom).astype(np.int64))
        return IntOperator(M, dom, cod)

    def entries(self) -> list[tuple[int, int, int]]:
        coo = self.matrix.tocoo()
        trip = sorted(zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()))
        return [(i, j, v) for i, j, v in trip if v != 0]

    def to_triplets(self) -> str:
        """Coordinate-list text, one ``i j value`` line per nonzero, sorted."""
        return "".join(f"{i} {j} {v}\n" for i, j, v in self.entries())

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def equals(self, other: IntOperator) -> bool:
        return self.shape == other.shape and (self.matrix != other.matrix).nnz == 0

    def block(self, table: VertexTable, codomain, domain) -> np.ndarray:
        """Dense integer submatrix between two level sets."""
        rows = table.block(codomain)
        cols = table.block(domain)
        return self.matrix[rows.start:rows.stop, cols.start:cols.stop].toarray()


@dataclass(frozen=True, eq=False)
class CommutatorReport:
    label: str
    lhs: IntOperator
    rhs: IntOperator
    residual: IntOperator

    @property
    def is_exact_match(self) -> bool:
        return self.residual.is_zero()

    @classmethod
    def compare(cls, label: str, lhs: IntOperator, rhs: IntOperator) -> CommutatorReport:
        return cls(label, lhs, rhs, lhs - rhs)


def _from_pairs(n: int, rows, cols, values=None, domain=None, codomain=None) -> IntOperator:
    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    vals = np.ones(rows.size, dtype=np.int64) if values is None else np.asarray(values, dtype=np.int64)
    return IntOperator(sp.coo_matrix((vals, (rows, cols)), shape=(n, n)), domain, codomain)


def neighbor_indices(table: VertexTable) -> np.ndarray:
    """Array of shape (n, N, 2): index of v + e_k and v - e_k."""
    n, N = table.size, table.N
    out = np.empty((n, N, 2), dtype=np.int64)
    for k in range(N):
        for s, step in enumerate((1, -1)):
            c = table.coords.copy()
            c[:, k] = normalize(table.m, c[:, k] + step)
            out[:, k, s] = table.indices(c)
    return out


def adjacency(table: VertexTable) -> IntOperator:
    nbr = neighbor_indices(table)
    rows = np.repeat(np.arange(table.size), 2 * table.N)
    return _from_pairs(table.size, rows, nbr.reshape(-1))


def _distance_filtered(table: VertexTable, offset: int) -> IntOperator:
    A = adjacency(table).matrix.tocoo()
    d = table.distances
    keep = d[A.row] == d[A.col] + offset
    return _from_pairs(table.size, A.row[keep], A.col[keep])


def outer_adjacency(table: VertexTable) -> IntOperator:
    """``(A_+ f)(v) = sum of f(w)`` over neighbours ``w`` with d(w) = d(v) - 1."""
    return _distance_filtered(table, 1)


def inner_adjacency(table: VertexTable) -> IntOperator:
    return outer_adjacency(table).T


def neutral_adjacency(table: VertexTable) -> IntOperator:
    """Adjacency between equidistant vertices (identically zero for m = 4)."""
    return _distance_filtered(table, 0)


_TRANSITIONS = {(1, 0): "outer", (-1, 1): "outer", (-1, 0): "inner", (1, -1): "inner", (0, 0): "neutral"}


def block_map(table: VertexTable, src, dst, A: IntOperator | None = None) -> IntOperator:
    """Restriction of A to the (dst, src) block; zero if either set is empty."""
    n = table.size
    if not (table.has_block(src) and table.has_block(dst)):
        return IntOperator.zero(n)
    src = as_signature(table.m, src)
    dst = as_signature(table.m, dst)
    A = adjacency(table) if A is None else A
    return A.restrict(table, codomain=[dst], domain=[src])


def subadjacency(table: VertexTable, src, dst) -> IntOperator:
    """Subadjacency ``A_{src -> dst}`` between two level sets.

    ``dst`` must be one of (p+1, q), (p-1, q+1), (p-1, q), (p+1, q-1), (p, q).
    """
    src_sig = as_signature(table.m, src)
    dst_sig = as_signature(table.m, dst)
    step = (dst_sig.p - src_sig.p, dst_sig.q - src_sig.q)
    if step not in _TRANSITIONS or src_sig.counts[2:] != dst_sig.counts[2:]:
        raise ValueError(f"{src_sig} -> {dst_sig} is not a subadjacency")
    for sig in (src_sig, dst_sig):
        if not table.has_block(sig):
            raise ValueError(f"infeasible signature {sig.counts} for N={table.N}")
    return block_map(table, src_sig, dst_sig)


def outer_targets(table: VertexTable, sig) -> list[LevelSignature]:
    sig = as_signature(table.m, sig)
    cands = [sig.shifted(1)]
    if table.m >= 4:
        cands.append(sig.shifted(-1, 1))
    return [s for s in cands if s.is_valid(table.N) and s in table.blocks]


def inner_targets(table: VertexTable, sig) -> list[LevelSignature]:
    sig = as_signature(table.m, sig)
    cands = [sig.shifted(-1)]
    if table.m >= 4:
        cands.append(sig.shifted(1, -1))
    return [s for s in cands if s.is_valid(table.N) and s in table.blocks]


def reflection_op(table: VertexTable, k: int) -> IntOperator:
    """``(rho_k f)(v) = f(v with coordinate k negated)``."""
    if not 0 <= k < table.N:
        raise IndexError(f"coordinate {k} out of range for N={table.N}")
    c = table.coords.copy()
    c[:, k] = normalize(table.m, -c[:, k])
    return _from_pairs(table.size, np.arange(table.size), table.indices(c))


def level_reflection_sum(table: VertexTable, level: int) -> IntOperator:
    """Sum of the reflections rho_k over coordinates k at the given level."""
    rows, cols = [], []
    for k in range(table.N):
        at = np.flatnonzero(table.levels[:, k] == level)
        c = table.coords[at].copy()
        c[:, k] = normalize(table.m, -c[:, k])
        rows.append(at)
        cols.append(table.indices(c))
    return _from_pairs(table.size, np.concatenate(rows), np.concatenate(cols))


def r1_op(table: VertexTable) -> IntOperator:
    return level_reflection_sum(table, 1)


def twisted_outer(table: VertexTable, src) -> IntOperator:
    """Reflection-composed outer map Sigma_{p,q} -> Sigma_{p-1,q+1} (m = 5).

    ``(T f)(v) = sum over level-two coordinates nu of v of
    f(v with coordinate nu replaced by -sign(v_nu))``.
    """
    if table.m != 5:
        raise ValueError("twisted outer adjacency is defined for m = 5 only")
    src = as_signature(table.m, src)
    dst = src.shifted(-1, 1)
    n = table.size
    if not (src in table.blocks and dst.is_valid(table.N) and dst in table.blocks):
        return IntOperator.zero(n)
    block = table.block(dst)
    at = np.arange(block.start, block.stop)
    rows, cols = [], []
    for nu in range(table.N):
        sel = at[table.levels[at, nu] == 2]
        c = table.coords[sel].copy()
        c[:, nu] = -np.sign(c[:, nu])
        rows.append(sel)
        cols.append(table.indices(c))
    return _from_pairs(n, np.concatenate(rows), np.concatenate(cols), domain=frozenset([src]),
                       codomain=frozenset([dst]))


def commutator(X: IntOperator, Y: IntOperator) -> IntOperator:
    """``XY - YX`` in exact integer arithmetic."""
    if X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise ValueError(f"commutator needs equal square shapes, got {X.shape} and {Y.shape}")
    return X @ Y - Y @ X


def projector(table: VertexTable, *sigs) -> IntOperator:
    return IntOperator(sp.diags(table.mask(*sigs).astype(np.int64)))


class OperatorSet:
    """Lazily built operators for one table, shared by the checks."""

    def __init__(self, table: VertexTable):
        self.table = table
        self._cache = {}

    def _get(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    @property
    def A(self) -> IntOperator:
        return self._get("A", lambda: adjacency(self.table))

    @property
    def A_plus(self) -> IntOperator:
        return self._get("A+", lambda: outer_adjacency(self.table))

    @property
    def A_minus(self) -> IntOperator:
        return self._get("A-", lambda: self.A_plus.T)

    @property
    def A0(self) -> IntOperator:
        return self._get("A0", lambda: neutral_adjacency(self.table))

    @property
    def R1(self) -> IntOperator:
        return self._get("R1", lambda: r1_op(self.table))

    @property
    def C(self) -> IntOperator:
        return self._get("C", lambda: commutator(self.A_minus, self.A_plus))

    def sub(self, src, dst) -> IntOperator:
        s = as_signature(self.table.m, src)
        d = as_signature(self.table.m, dst)
        return self._get(("sub", s, d), lambda: block_map(self.table, s, d, self.A))

    def proj(self, sig) -> IntOperator:
        s = as_signature(self.table.m, sig)
        return self._get(("P", s), lambda: projector(self.table, s))
