"""Vertices of the cycle products C_m^N and their level structure.

Elements of Z_m^N are stored in signed form: every coordinate lies in
``{-floor((m-1)/2), ..., floor(m/2)}``, so that the absolute value of a
coordinate is its graph distance to 0 in the cycle C_m.  Coordinate
positions ``k`` are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb, factorial

import numpy as np

from .config import GRAPH_VERTEX_LIMIT, BudgetExceeded, check_modulus


def max_level(m: int) -> int:
    return m // 2


def signed_values(m: int) -> list[int]:
    """Signed representatives of Z_m, ordered 0, 1, -1, 2, -2, ..."""
    lo = (m - 1) // 2
    return sorted(range(-lo, m // 2 + 1), key=lambda x: (abs(x), -x))


def normalize(m: int, x):
    """Map an integer (or integer array) to its signed representative mod m."""
    lo = (m - 1) // 2
    return (x + lo) % m - lo


@dataclass(frozen=True)
class GroupElement:
    m: int
    coords: tuple[int, ...]

    def __post_init__(self):
        check_modulus(self.m)
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        lo, hi = -((self.m - 1) // 2), self.m // 2
        for c in self.coords:
            if not lo <= c <= hi:
                raise ValueError(f"coordinate {c} outside signed range [{lo}, {hi}] for m={self.m}")

    @classmethod
    def wrap(cls, m: int, coords) -> GroupElement:
        """Build an element from arbitrary integers, reducing each mod m."""
        return cls(m, tuple(int(normalize(m, c)) for c in coords))

    @property
    def N(self) -> int:
        return len(self.coords)

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(abs(c) for c in self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class LevelSignature:
    """Number of coordinates at each nonzero level.

    ``counts[l - 1]`` is the number of coordinates at level ``l`` for
    ``l = 1, ..., floor(m/2)``.  For m = 4, 5 the pair ``(p, q)`` is
    ``(counts[0], counts[1])``; for m = 3 only ``p`` (the distance r) exists.
    """

    counts: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.counts[0]

    @property
    def q(self) -> int:
        return self.counts[1] if len(self.counts) > 1 else 0

    @property
    def distance(self) -> int:
        return sum((lvl + 1) * c for lvl, c in enumerate(self.counts))

    @property
    def support_size(self) -> int:
        return sum(self.counts)

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.distance, self.q)

    def shifted(self, dp: int, dq: int = 0) -> LevelSignature:
        counts = list(self.counts)
        counts[0] += dp
        if dq:
            if len(counts) < 2:
                raise ValueError("level-two shift requested for m = 3")
            counts[1] += dq
        return LevelSignature(tuple(counts))

    def is_valid(self, N: int) -> bool:
        return all(c >= 0 for c in self.counts) and self.support_size <= N

    def label(self) -> str:
        if len(self.counts) == 1:
            return f"Sigma_{self.p}"
        return f"Sigma_{{{self.p},{self.q}}}"

    def __str__(self):
        return self.label()


def as_signature(m: int, sig) -> LevelSignature:
    """Coerce ``sig`` (LevelSignature, int r, or (p, q) tuple) for modulus m."""
    if isinstance(sig, LevelSignature):
        counts = sig.counts
    elif isinstance(sig, (int, np.integer)):
        counts = (int(sig),)
    else:
        counts = tuple(int(c) for c in sig)
    M = max_level(m)
    if len(counts) > M:
        if any(counts[M:]):
            raise ValueError(f"signature {counts} has levels above {M} for m={m}")
        counts = counts[:M]
    counts = counts + (0,) * (M - len(counts))
    return LevelSignature(counts)


def signature_of(m: int, coords) -> LevelSignature:
    M = max_level(m)
    levels = [abs(int(c)) for c in coords]
    return LevelSignature(tuple(levels.count(lvl) for lvl in range(1, M + 1)))


def signature_cardinality(m: int, N: int, sig) -> int:
    """Number of vertices of C_m^N carrying the level signature ``sig``."""
    sig = as_signature(m, sig)
    if not sig.is_valid(N):
        raise ValueError(f"infeasible signature {sig.counts} for N={N}")
    counts = list(sig.counts)
    ways = factorial(N) // factorial(N - sum(counts))
    for c in counts:
        ways //= factorial(c)
    for lvl, c in enumerate(counts, start=1):
        # level m/2 for even m has a single signed representative
        signs = 1 if (m % 2 == 0 and lvl == m // 2) else 2
        ways *= signs**c
    return ways


def feasible_signatures(m: int, N: int) -> list[LevelSignature]:
    """All level signatures of C_m^N in table (block) order."""
    check_modulus(m)
    M = max_level(m)
    out = []

    def rec(prefix, remaining):
        if len(prefix) == M:
            out.append(LevelSignature(tuple(prefix)))
            return
        for c in range(remaining + 1):
            rec(prefix + [c], remaining - c)

    rec([], N)
    return sorted(out, key=lambda s: s.sort_key)


def level_set(m: int, N: int, sig) -> range:
    """0-based index range of the level set ``sig`` in the table order."""
    sig = as_signature(m, sig)
    if not sig.is_valid(N):
        raise ValueError(f"infeasible signature {sig.counts} for N={N}")
    start = 0
    for other in feasible_signatures(m, N):
        size = signature_cardinality(m, N, other)
        if other == sig:
            return range(start, start + size)
        start += size
    raise AssertionError("unreachable")


@dataclass(frozen=True, eq=False)
class VertexTable:
    """All m^N vertices sorted by distance, then number of level-two
    coordinates, then lexicographically on signed coordinates."""

    m: int
    N: int
    coords: np.ndarray = field(repr=False)
    signatures: tuple[LevelSignature, ...] = field(repr=False)
    blocks: dict = field(repr=False)
    _lookup: np.ndarray = field(repr=False)

    def __len__(self):
        return self.coords.shape[0]

    @property
    def size(self) -> int:
        return self.coords.shape[0]

    def codes(self, coords: np.ndarray) -> np.ndarray:
        """Lexicographic code of each row of signed coordinates."""
        digits = np.asarray(coords) % self.m
        weights = self.m ** np.arange(self.N - 1, -1, -1)
        return digits @ weights

    def indices(self, coords: np.ndarray) -> np.ndarray:
        return self._lookup[self.codes(np.atleast_2d(coords))]

    def index(self, v) -> int:
        coords = v.coords if isinstance(v, GroupElement) else tuple(v)
        if len(coords) != self.N:
            raise ValueError(f"expected {self.N} coordinates, got {len(coords)}")
        return int(self.indices(np.array(coords))[0])

    def element(self, i: int) -> GroupElement:
        return GroupElement(self.m, tuple(int(c) for c in self.coords[i]))

    @cached_property
    def levels(self) -> np.ndarray:
        return np.abs(self.coords)

    @cached_property
    def distances(self) -> np.ndarray:
        return self.levels.sum(axis=1)

    @cached_property
    def block_ids(self) -> np.ndarray:
        ids = np.empty(self.size, dtype=np.int64)
        for b, sig in enumerate(self.signatures):
            r = self.blocks[sig]
            ids[r.start:r.stop] = b
        return ids

    def signature_at(self, i: int) -> LevelSignature:
        return self.signatures[self.block_ids[i]]

    def block(self, sig) -> range:
        sig = as_signature(self.m, sig)
        try:
            return self.blocks[sig]
        except KeyError:
            raise ValueError(f"infeasible signature {sig.counts} for N={self.N}") from None

    def has_block(self, sig) -> bool:
        try:
            sig = as_signature(self.m, sig)
        except ValueError:
            return False
        return sig in self.blocks

    def mask(self, *sigs) -> np.ndarray:
        """Boolean indicator of the union of the given level sets."""
        out = np.zeros(self.size, dtype=bool)
        for sig in sigs:
            r = self.block(sig)
            out[r.start:r.stop] = True
        return out

    def ball(self, K: int) -> np.ndarray:
        return self.distances <= K


def enumerate_vertices(m: int, N: int, limit: int | None = None) -> VertexTable:
    """Enumerate Z_m^N in the distance / level-two / lexicographic order."""
    check_modulus(m)
    if N < 1:
        raise ValueError("N must be at least 1")
    limit = GRAPH_VERTEX_LIMIT if limit is None else limit
    if m**N > limit:
        raise BudgetExceeded(f"C_{m}^{N} has {m**N} vertices, above the limit of {limit}")

    lo = (m - 1) // 2
    values = np.arange(-lo, m // 2 + 1)
    grids = np.meshgrid(*([values] * N), indexing="ij")
    coords = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
    levels = np.abs(coords)
    dist = levels.sum(axis=1)
    q2 = (levels == 2).sum(axis=1)
    keys = [coords[:, k] for k in range(N - 1, -1, -1)] + [q2, dist]
    coords = coords[np.lexsort(keys)]
    coords.setflags(write=False)

    M = max_level(m)
    levels = np.abs(coords)
    counts = np.stack([(levels == lvl).sum(axis=1) for lvl in range(1, M + 1)], axis=1)
    blocks = {}
    order = []
    start = 0
    n = coords.shape[0]
    while start < n:
        sig = LevelSignature(tuple(int(c) for c in counts[start]))
        stop = start
        while stop < n and tuple(counts[stop]) == sig.counts:
            stop += 1
        blocks[sig] = range(start, stop)
        order.append(sig)
        start = stop

    digits = coords % m
    weights = m ** np.arange(N - 1, -1, -1)
    lookup = np.empty(n, dtype=np.int64)
    lookup[digits @ weights] = np.arange(n)
    lookup.setflags(write=False)
    return VertexTable(m, N, coords, tuple(order), blocks, lookup)


def path_distance(v: GroupElement) -> int:
    return sum(v.levels)


def level_signature(v: GroupElement) -> LevelSignature:
    return signature_of(v.m, v.coords)


def neighbors(v: GroupElement) -> set[GroupElement]:
    out = set()
    for k in range(v.N):
        for step in (1, -1):
            c = list(v.coords)
            c[k] += step
            out.add(GroupElement.wrap(v.m, c))
    return out


def _with(v: GroupElement, k: int, value: int) -> GroupElement:
    c = list(v.coords)
    c[k] = value
    return GroupElement.wrap(v.m, c)


def _check_coord(v: GroupElement, k: int) -> None:
    if not 0 <= k < v.N:
        raise IndexError(f"coordinate {k} out of range for N={v.N}")


def raise_level(v: GroupElement, k: int) -> tuple[GroupElement, ...]:
    """Neighbours of ``v`` one level further out in coordinate ``k``.

    A null coordinate has two such neighbours (``v + e_k`` and ``v - e_k``);
    otherwise the result is the unique vertex ``v_k^+``.
    """
    _check_coord(v, k)
    lvl = v.levels[k]
    if lvl >= max_level(v.m):
        raise ValueError(f"coordinate {k} of {v} is already at the maximal level")
    if lvl == 0:
        return (_with(v, k, 1), _with(v, k, -1))
    sign = 1 if v.coords[k] > 0 else -1
    return (_with(v, k, sign * (lvl + 1)),)


def lower_level(v: GroupElement, k: int) -> tuple[GroupElement, ...]:
    """Neighbours of ``v`` one level closer to 0 in coordinate ``k``.

    For even m a coordinate at level m/2 has two such neighbours.
    """
    _check_coord(v, k)
    lvl = v.levels[k]
    if lvl == 0:
        raise ValueError(f"coordinate {k} of {v} is null")
    if v.m % 2 == 0 and lvl == v.m // 2:
        return (_with(v, k, v.coords[k] - 1), _with(v, k, v.coords[k] + 1))
    sign = 1 if v.coords[k] > 0 else -1
    return (_with(v, k, sign * (lvl - 1)),)


def reflect(v: GroupElement, k: int) -> GroupElement:
    _check_coord(v, k)
    return _with(v, k, -v.coords[k])


def cardinality_formula_c3(N: int, r: int) -> int:
    return 2**r * comb(N, r)


def cardinality_formula_c5(N: int, p: int, q: int) -> int:
    return comb(N, q) * comb(N - q, p) * 2 ** (p + q)
