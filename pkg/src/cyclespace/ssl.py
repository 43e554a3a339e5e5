"""Spatio-spectral limiting on C_m^N.

Q restricts to the ball d(v) <= K, P = F^{-1} Q F restricts to the same
index set in frequency.  QPQ is Hermitian and, on range(Q), has the same
nonzero spectrum as PQ; it is diagonalized with ``eigh`` and the singular
values of PQ are used as an independent cross-check (sigma^2 = eigenvalue).

If y is an eigenvector of QPQ on range(Q), then P y is an eigenvector of
PQ and z = F P y = Q F y one of F P Q F^{-1}.  Classification works on the
z vectors, normalized to unit length.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from . import config
from .group import LevelSignature, VertexTable
from .operators import OperatorSet
from .spectral import FourierBasis, fmt, gft


@dataclass
class SslConfig:
    m: int
    N: int
    K: int
    zero_tol: float = config.ZERO_TOL
    cluster_tol: float = config.CLUSTER_TOL
    r1_tol: float = config.R1_RESIDUAL_TOL

    def validate(self) -> None:
        config.check_modulus(self.m)
        if self.N < 1:
            raise ValueError("N must be at least 1")
        kmax = self.N * (self.m // 2)
        if not 0 <= self.K <= kmax:
            raise ValueError(f"K={self.K} outside 0..{kmax}")
        for name in ("zero_tol", "cluster_tol", "r1_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


def spatial_projection(table: VertexTable, K: int) -> np.ndarray:
    """Diagonal 0/1 matrix of the ball d(v) <= K."""
    return np.diag(table.ball(K).astype(float))


def spectral_projection(fb: FourierBasis, K: int) -> np.ndarray:
    Q = spatial_projection(fb.table, K)
    return fb.inverse @ Q @ fb.F


@dataclass
class EigenClass:
    """Eigenspace pieces sharing base level set, R_1 eigenvalue and dimension."""

    base: LevelSignature
    r1: int | None
    mu: int | None
    dim: int
    clusters: list = field(default_factory=list)
    members: list = field(default_factory=list, repr=False)

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    def key(self):
        return (self.base.sort_key, self.r1 if self.r1 is not None else 99, self.dim)

    def ranges(self, one_based: bool = True) -> list[str]:
        o = int(one_based)
        return [f"{a + o}" if b - a == 1 else f"{a + o}-{b - 1 + o}" for a, b in self.clusters]


@dataclass
class SslReport:
    config: SslConfig
    table: VertexTable = field(repr=False)
    values: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)
    clusters: list = field(default_factory=list)
    classes: list = field(default_factory=list)
    cluster_class: list = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return int((self.values > self.config.cluster_tol).sum())

    @property
    def ball(self) -> np.ndarray:
        return np.flatnonzero(self.table.ball(self.config.K))


def _clusters(values: np.ndarray, tol: float) -> list[tuple[int, int]]:
    out, i = [], 0
    while i < len(values):
        j = i + 1
        while j < len(values) and abs(values[j] - values[i]) < tol:
            j += 1
        out.append((i, j))
        i = j
    return out


def decompose(P: np.ndarray, Q: np.ndarray, cfg: SslConfig, fb: FourierBasis) -> SslReport:
    """Eigen-decomposition of QPQ on range(Q), cross-checked against svd(PQ)."""
    table = fb.table
    sel = np.flatnonzero(np.diag(Q) > 0.5)
    T = P[np.ix_(sel, sel)]
    diag = {}
    diag["imag_part"] = float(np.abs(T.imag).max()) if np.iscomplexobj(T) else 0.0
    # QPQ is real whenever the ball is symmetric under negation, which it is
    if diag["imag_part"] < config.UNITARY_TOL:
        T = T.real
    T = (T + T.conj().T) / 2
    ev, U = np.linalg.eigh(T)
    order = np.argsort(-ev, kind="stable")
    ev, U = ev[order], U[:, order]

    sv = np.linalg.svd(P @ Q, compute_uv=False)[:len(sel)]
    diag["route_agreement"] = float(np.abs(np.sort(sv**2)[::-1] - ev).max())
    diag["trace_error"] = float(abs(np.trace(T).real - ev.sum()))
    diag["range_min"] = float(ev.min())
    diag["range_max"] = float(ev.max())
    diag["projection_error"] = float(np.abs(P @ P - P).max())
    diag["hermitian_error"] = float(np.abs(P - P.conj().T).max())
    diag["ok"] = bool(diag["route_agreement"] < config.ROUTE_AGREEMENT_TOL
                      and diag["trace_error"] < config.ROUTE_AGREEMENT_TOL
                      and diag["range_min"] > -config.SPECTRUM_RANGE_TOL
                      and diag["range_max"] < 1 + config.SPECTRUM_RANGE_TOL)

    keep = ev > cfg.cluster_tol
    ev, U = ev[keep], U[:, keep]
    y = np.zeros((table.size, U.shape[1]), dtype=U.dtype)
    y[sel] = U
    z = Q @ (fb.F @ y)
    z /= np.linalg.norm(z, axis=0)
    # fix the phase: largest entry real and positive
    piv = np.argmax(np.abs(z) > (1 - 1e-9) * np.abs(z).max(axis=0), axis=0)
    ph = z[piv, np.arange(z.shape[1])]
    z = z * (np.abs(ph) / ph)
    return SslReport(cfg, table, ev, y, z, _clusters(ev, cfg.cluster_tol), diagnostics=diag)


def _orth(X: np.ndarray, rel: float = 1e-10) -> np.ndarray:
    if X.shape[1] == 0:
        return X
    u, s, _ = np.linalg.svd(X, full_matrices=False)
    return u[:, s > rel * max(s[0], 1e-300)]


def _block_eigenvalue(X: np.ndarray, B: np.ndarray, tol: float) -> tuple[int | None, float]:
    """Common integer eigenvalue of the block operator X on span(B), if any."""
    Ob = _orth(B)
    if Ob.shape[1] == 0:
        return None, np.inf
    M = Ob.conj().T @ X @ Ob
    lam = np.trace(M).real / Ob.shape[1]
    r = int(round(lam))
    res = float(np.abs(X @ Ob - r * Ob).max())
    return (r if res < tol else None), res


def split_by_base(Z: np.ndarray, table: VertexTable, tol: float) -> list[tuple[LevelSignature, np.ndarray]]:
    """Split an orthonormal eigenspace basis along the distance filtration.

    Walking outward from the origin, the part of the remaining space that is
    nonzero at distance d becomes a piece; the part vanishing there moves
    on.  A piece's base is the first level set at distance d (fewest
    level-two coordinates) on which it is nonzero.  The pieces depend on
    the subspace only, not on the basis chosen inside it.
    """
    out, rest = [], Z
    by_dist: dict[int, list[LevelSignature]] = {}
    for sig in table.signatures:
        by_dist.setdefault(sig.distance, []).append(sig)
    for d, sigs in sorted(by_dist.items()):
        if rest.shape[1] == 0:
            break
        rows = np.flatnonzero(table.mask(*sigs))
        _, s, vh = np.linalg.svd(rest[rows], full_matrices=True)
        k = int((s > tol).sum())
        if k:
            piece = rest @ vh[:k].conj().T
            base = next(sig for sig in sigs
                        if np.linalg.norm(piece[table.block(sig).start:table.block(sig).stop]) > tol)
            out.append((base, piece))
            rest = rest @ vh[k:].conj().T
    return out


def classify(report: SslReport, ops: OperatorSet) -> list[EigenClass]:
    """Base level set, R_1 and A_0 eigenvalues of every eigenspace piece; merge repeats."""
    cfg, t = report.config, report.table
    R1 = ops.R1.dense().astype(float)
    A0 = ops.A0.dense().astype(float)
    merged: dict = {}
    pieces_of = []
    report.diagnostics["ambiguous"] = []
    for a, b in report.clusters:
        keys = []
        for base, Zp in split_by_base(report.z[:, a:b], t, cfg.zero_tol):
            r = t.block(base)
            Zb = Zp[r.start:r.stop]
            lam = mu = None
            if t.m != 4:
                # no reflection label for m = 4: its base spaces carry no eigenvalue condition
                lam, res = _block_eigenvalue(R1[r.start:r.stop, r.start:r.stop], Zb, cfg.r1_tol)
                mu, _ = _block_eigenvalue(A0[r.start:r.stop, r.start:r.stop], Zb, cfg.r1_tol)
            if lam is None and t.m != 4:
                report.diagnostics["ambiguous"].append({"cluster": [a, b], "base": base.label(), "residual": res})
            key = (base, lam, Zp.shape[1])
            if key not in merged:
                merged[key] = EigenClass(base, lam, mu, Zp.shape[1])
            if (a, b) not in merged[key].clusters:
                merged[key].clusters.append((a, b))
            merged[key].members.append(Zp)
            keys.append(key)
        pieces_of.append(keys)
    classes = sorted(merged.values(), key=lambda c: c.key())
    ids = {(c.base, c.r1, c.dim): i for i, c in enumerate(classes)}
    report.cluster_class = [[ids[k] for k in keys] for keys in pieces_of]
    report.classes = classes
    return classes


def run(cfg: SslConfig, fb: FourierBasis | None = None) -> SslReport:
    cfg.validate()
    fb = gft(cfg.m, cfg.N) if fb is None else fb
    Q = spatial_projection(fb.table, cfg.K)
    P = spectral_projection(fb, cfg.K)
    report = decompose(P, Q, cfg, fb)
    classify(report, OperatorSet(fb.table))
    return report


def level_vector_check(report: SslReport, vectors: np.ndarray | None = None) -> tuple[bool, int]:
    """Base-Sigma_{0,0} eigenvectors are constant on every level set.

    Returns (passed, number of vectors checked).
    """
    t = report.table
    if vectors is None:
        vectors = level_vectors(report)
    ok = True
    for v in vectors.T:
        scale = np.abs(v).max()
        for sig in t.signatures:
            r = t.block(sig)
            seg = v[r.start:r.stop]
            ok &= bool(np.abs(seg - seg[0]).max() <= config.LEVEL_CONSTANT_TOL * scale)
    return ok, vectors.shape[1]


def level_vectors(report: SslReport) -> np.ndarray:
    cols = [Zp for c in report.classes if c.base.distance == 0 for Zp in c.members]
    if not cols:
        return np.zeros((report.table.size, 0), dtype=complex)
    return np.hstack(cols)


# -- link to the invariant spaces --------------------------------------------

@dataclass
class Linkage:
    cluster: tuple
    dim: int
    parts: dict
    residual: float

    @property
    def ok(self) -> bool:
        return sum(self.parts.values()) == self.dim and self.residual < config.LINKAGE_TOL


def link_to_invariant_spaces(report: SslReport, spaces) -> list[Linkage]:
    """Split each eigenspace into its intersections with the given V spaces.

    ``spaces`` maps a label to a float or integer basis matrix (columns).
    A cluster links when the intersection dimensions add up to the cluster
    dimension and the cluster lies in the sum of those intersections.
    """
    orth = {k: _orth(np.asarray(B, dtype=float)) for k, B in spaces.items()}
    out = []
    for a, b in report.clusters:
        Z = _orth(report.z[:, a:b])
        parts, pieces = {}, []
        for k, O in orth.items():
            M = O.conj().T @ Z
            u, s, _ = np.linalg.svd(M, full_matrices=False)
            hit = s > 1 - config.LINKAGE_TOL
            if hit.any():
                parts[k] = int(hit.sum())
                pieces.append(O @ u[:, hit])
        if pieces:
            S = _orth(np.hstack(pieces))
            res = float(np.abs(Z - S @ (S.conj().T @ Z)).max())
        else:
            res = float(np.abs(Z).max())
        out.append(Linkage((a, b), b - a, parts, res))
    return out


# -- exports -----------------------------------------------------------------

def class_table_lines(report: SslReport, one_based: bool = True) -> list[str]:
    lines = [f"{'base':<14}{'dim (#)':<10}{'R1':>4}  indices"]
    for c in report.classes:
        r1 = "n/a" if report.table.m == 4 else ("?" if c.r1 is None else str(c.r1))
        lines.append(f"{c.base.label():<14}{f'{c.dim} ({c.multiplicity})':<10}{r1:>4}  " + ", ".join(c.ranges(one_based)))
    total = sum(c.dim * c.multiplicity for c in report.classes)
    lines.append(f"total {total}")
    return lines


def report_csv(report: SslReport, one_based: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "value", "base_p", "base_q", "r1", "class"])
    o = int(one_based)
    for ci, (a, b) in enumerate(report.clusters):
        # pieces of a split cluster are listed in filtration order
        labels = [cid for cid in report.cluster_class[ci] for _ in range(report.classes[cid].dim)]
        for i, cid in zip(range(a, b), labels):
            c = report.classes[cid]
            w.writerow([i + o, fmt(report.values[i]), c.base.p, c.base.q,
                        "" if c.r1 is None else c.r1, cid])
    return buf.getvalue()


def _clean(obj):
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def report_json(report: SslReport, one_based: bool = True) -> str:
    cfg = report.config
    ball = report.ball
    o = int(one_based)
    doc = {
        "config": {"m": cfg.m, "N": cfg.N, "K": cfg.K, "zero_tol": cfg.zero_tol,
                   "cluster_tol": cfg.cluster_tol, "r1_tol": cfg.r1_tol},
        "rank": report.rank,
        "spectrum": [float(v) for v in report.values],
        "classes": [{"base": list(c.base.counts), "r1": c.r1, "a0": c.mu, "dim": c.dim,
                     "multiplicity": c.multiplicity, "indices": c.ranges(one_based)}
                    for c in report.classes],
        "diagnostics": report.diagnostics,
        "eigenvectors": {"rows": [int(i) + o for i in ball],
                         "real": report.z[ball].real.tolist(),
                         "imag": report.z[ball].imag.tolist()},
    }
    return json.dumps(_clean(doc), indent=1, sort_keys=True) + "\n"


def fig3_data(report: SslReport) -> str:
    return "# index eigenvalue\n" + "".join(f"{i + 1} {fmt(v)}\n" for i, v in enumerate(report.values))


def fig4_data(report: SslReport) -> str:
    V = level_vectors(report).real
    ball = report.ball
    head = "# vertex " + " ".join(f"v{j + 1}" for j in range(V.shape[1])) + "\n"
    return head + "".join(f"{i + 1} " + " ".join(fmt(x) for x in V[i]) + "\n" for i in ball)


def fig5_data(report: SslReport) -> str:
    """One representative per class, real parts sorted within each level set."""
    t = report.table
    cols, names = [], []
    for c in report.classes:
        v = c.members[0][:, 0].real.copy()
        for sig in t.signatures:
            r = t.block(sig)
            v[r.start:r.stop] = np.sort(v[r.start:r.stop])
        cols.append(v)
        names.append(f"{c.base.p}{c.base.q}_{c.r1}_{c.dim}")
    ball = report.ball
    M = np.column_stack(cols)
    head = "# vertex " + " ".join(names) + "\n"
    return head + "".join(f"{i + 1} " + " ".join(fmt(x) for x in M[i]) + "\n" for i in ball)


def plateau_lengths(values: np.ndarray, tol: float = config.CLUSTER_TOL) -> list[int]:
    return [b - a for a, b in _clusters(np.asarray(values), tol)]
