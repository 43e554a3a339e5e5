"""Exact checks of the commutator and neutral-adjacency identities.

Every check returns :class:`Check` records; nothing here uses floating
point.  ``run_suite`` collects all identities that apply to a given
(m, N) and is what ``cyclespace verify`` prints.

Two identities are carried in two forms for m = 5.  The *stated* forms
use the multiplier ``2(N - q) - 3p`` together with ``+R_1``; the
*corrected* forms use ``2N - 2p - 3q`` with ``-R_1``, which is what exact
path counting gives (the in-coordinate level 1 <-> 2 round trips
contribute ``p - q`` and do not cancel, and the reflection term comes from
``A_+ A_-`` and so enters with a minus sign).  Only the corrected forms
hold; the stated forms are kept so the discrepancy stays visible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import rank
from .group import LevelSignature, as_signature, enumerate_vertices
from .operators import (CommutatorReport, IntOperator, OperatorSet, commutator,
                        reflection_op, twisted_outer)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _report_check(name: str, rep: CommutatorReport) -> Check:
    nz = rep.residual.nnz
    return Check(name, rep.is_exact_match, "" if nz == 0 else f"{nz} nonzero residual entries")


def stated_multiplier(m: int, N: int, sig: LevelSignature) -> int:
    """Scalar part of C on a level set in the closed forms."""
    if m == 3:
        return 2 * N - 3 * sig.p
    if m == 4:
        return 2 * (N - sig.distance)
    return 2 * (N - sig.q) - 3 * sig.p


def corrected_multiplier_c5(N: int, sig: LevelSignature) -> int:
    return 2 * N - 2 * sig.p - 3 * sig.q


def commutator_rhs(ops: OperatorSet, sig: LevelSignature, corrected: bool = False) -> IntOperator:
    """Closed-form right-hand side for C on one level set."""
    t = ops.table
    P = ops.proj(sig)
    if t.m == 3:
        return stated_multiplier(3, t.N, sig) * P - P @ ops.A0 @ P
    if t.m == 4:
        return stated_multiplier(4, t.N, sig) * P
    if corrected:
        return corrected_multiplier_c5(t.N, sig) * P - P @ ops.R1 @ P
    return stated_multiplier(5, t.N, sig) * P + P @ ops.R1 @ P


def commutator_theorem(ops: OperatorSet, sig, corrected: bool = False) -> CommutatorReport:
    """Compare the (sig, sig) block of C = [A_-, A_+] with its closed form."""
    t = ops.table
    sig = as_signature(t.m, sig)
    if not t.has_block(sig):
        raise ValueError(f"infeasible signature {sig.counts} for N={t.N}")
    P = ops.proj(sig)
    lhs = P @ ops.C @ P
    rhs = commutator_rhs(ops, sig, corrected)
    form = "corrected" if corrected else "stated"
    label = f"commutator m={t.m} N={t.N} {sig.label()}" + (f" [{form}]" if t.m == 5 else "")
    return CommutatorReport.compare(label, lhs, rhs)


def commutator_checks(ops: OperatorSet, corrected: bool = False, max_distance: int | None = None) -> list[Check]:
    out = []
    for sig in ops.table.signatures:
        if max_distance is not None and sig.distance > max_distance:
            continue
        rep = commutator_theorem(ops, sig, corrected)
        out.append(_report_check(rep.label, rep))
    return out


def samelevel_check(ops: OperatorSet) -> Check:
    """C only couples vertex pairs with identical per-coordinate levels."""
    coo = ops.C.matrix.tocoo()
    lv = ops.table.levels
    bad = np.any(lv[coo.row] != lv[coo.col], axis=1)
    return Check("support of C on equal level vectors", not bad.any(),
                 f"{int(bad.sum())} offending entries" if bad.any() else "")


def decomposition_checks(ops: OperatorSet) -> list[Check]:
    t = ops.table
    out = [
        Check("A = A_+ + A_- + A_0", ops.A.equals(ops.A_plus + ops.A_minus + ops.A0)),
        Check("A_+ transpose equals A_-", ops.A_plus.T.equals(ops.A_minus)),
        Check("A symmetric with row sums 2N",
              ops.A.equals(ops.A.T) and bool(np.all(ops.A.matrix.sum(axis=1) == 2 * t.N))),
    ]
    if t.m == 4:
        out.append(Check("A_0 = 0 for m = 4", ops.A0.is_zero()))
    return out


def twisted_outer_checks(ops: OperatorSet) -> list[Check]:
    """[A_0, A_{(p,q)->(p-1,q+1)}] equals the twisted outer map, block by block."""
    t = ops.table
    out = []
    for sig in t.signatures:
        up = sig.shifted(-1, 1)
        if not (up.is_valid(t.N) and t.has_block(up)):
            continue
        Ap = ops.sub(sig, up)
        lhs = commutator(ops.A0, Ap) @ ops.proj(sig)
        rep = CommutatorReport.compare(f"twisted outer {sig.label()}", lhs, twisted_outer(t, sig))
        out.append(_report_check(rep.label, rep))
    return out


def neutral_commutator_checks(ops: OperatorSet, max_distance: int | None = None) -> list[Check]:
    """A_-(A_0 A_+ - A_+ A_0) f = (R_1 - A_0) f + T A_{(p,q)->(p+1,q-1)} f on each Sigma_{p,q}.

    Here A_+ is the subadjacency into (p-1, q+1), A_- its way back, and T
    the twisted outer map out of (p+1, q-1).
    """
    t = ops.table
    out = []
    for sig in t.signatures:
        if max_distance is not None and sig.distance > max_distance:
            continue
        P = ops.proj(sig)
        up = sig.shifted(-1, 1)
        if up.is_valid(t.N) and t.has_block(up):
            lhs = ops.sub(up, sig) @ commutator(ops.A0, ops.sub(sig, up)) @ P
        else:
            lhs = IntOperator.zero(t.size)
        rhs = (ops.R1 - ops.A0) @ P
        dn = sig.shifted(1, -1)
        if dn.is_valid(t.N) and t.has_block(dn):
            rhs = rhs + twisted_outer(t, dn) @ ops.sub(sig, dn)
        rep = CommutatorReport.compare(f"neutral commutator {sig.label()}", lhs, rhs)
        out.append(_report_check(rep.label, rep))
    return out


def kernel_interchange_checks(ops: OperatorSet, corrected: bool = False) -> list[Check]:
    """A_- A_+ h = m h +/- R_1 h + A_+ A_- h for h on Sigma_{p+1,q-1} (m = 5)."""
    t = ops.table
    out = []
    for sig in t.signatures:
        P = ops.proj(sig)
        if corrected:
            rhs = corrected_multiplier_c5(t.N, sig) * P - ops.R1 @ P
        else:
            rhs = stated_multiplier(5, t.N, sig) * P + ops.R1 @ P
        rhs = rhs + ops.A_plus @ ops.A_minus @ P
        lhs = ops.A_minus @ ops.A_plus @ P
        form = "corrected" if corrected else "stated"
        rep = CommutatorReport.compare(f"kernel interchange {sig.label()} [{form}]", lhs, rhs)
        out.append(_report_check(rep.label, rep))
    return out


def reflection_checks(ops: OperatorSet) -> list[Check]:
    t = ops.table
    ok_inv = ok_plus = ok_minus = True
    I = IntOperator.identity(t.size)
    for k in range(t.N):
        rho = reflection_op(t, k)
        ok_inv &= (rho @ rho).equals(I)
        ok_plus &= (rho @ ops.A_plus).equals(ops.A_plus @ rho)
        ok_minus &= (rho @ ops.A_minus).equals(ops.A_minus @ rho)
    return [Check("reflections are involutions", ok_inv),
            Check("reflections commute with A_+", ok_plus),
            Check("reflections commute with A_-", ok_minus)]


def _block_dense(ops: OperatorSet, X: IntOperator, sig) -> np.ndarray:
    return X.block(ops.table, sig, sig)


def neutral_structure_checks(ops: OperatorSet) -> list[Check]:
    """R_1 and A_0 commute per block; A_0 has a degree <= q+1 annihilator;
    A_0^2 = I on Sigma_{p,1}."""
    t = ops.table
    comm_ok = poly_ok = square_ok = True
    for sig in t.signatures:
        R = _block_dense(ops, ops.R1, sig)
        Z = _block_dense(ops, ops.A0, sig)
        comm_ok &= bool(np.array_equal(R @ Z, Z @ R))
        n = Z.shape[0]
        powers = [np.eye(n, dtype=np.int64).ravel()]
        for _ in range(sig.q + 1):
            powers.append((Z @ powers[-1].reshape(n, n)).ravel())
        poly_ok &= rank(np.array(powers).T) < len(powers)
        if sig.q == 1:
            square_ok &= bool(np.array_equal(Z @ Z, np.eye(n, dtype=np.int64)))
    return [Check("R_1 commutes with A_0 on each level set", comm_ok),
            Check("A_0 annihilated by a polynomial of degree q+1", poly_ok),
            Check("A_0 squares to I on Sigma_{p,1}", square_ok)]


def run_suite(m: int, N: int, include_stated: bool = True) -> list[Check]:
    """All exact identities in scope for C_m^N."""
    ops = OperatorSet(enumerate_vertices(m, N))
    checks = decomposition_checks(ops) + [samelevel_check(ops)]
    if m in (3, 4):
        checks += commutator_checks(ops)
    else:
        if include_stated:
            checks += commutator_checks(ops, corrected=False)
        checks += commutator_checks(ops, corrected=True)
        checks += reflection_checks(ops)
        checks += twisted_outer_checks(ops)
        checks += neutral_commutator_checks(ops)
        if include_stated:
            checks += kernel_interchange_checks(ops, corrected=False)
        checks += kernel_interchange_checks(ops, corrected=True)
        checks += neutral_structure_checks(ops)
    return checks
