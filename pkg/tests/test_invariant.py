import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import ops, table
from cyclespace import (build_V, build_W, hadamard_eigenbasis, level_matrix, multiplier_sequence,
                        verify_invariance)
from cyclespace.exact import nullspace, rank
from cyclespace.invariant import (all_V, all_W, corrupt, coordinate_check, eigen_shift_checks,
                                  level_matrix_check, multiplier_check, reflection_spectrum)


# -- multipliers and level matrices --------------------------------------------

@given(st.integers(1, 7), st.data())
def test_first_multiplier(N, data):
    r = data.draw(st.integers(0, N))
    lam = data.draw(st.integers(-r, r))
    assert multiplier_sequence(3, N, r, lam).values[0] == 2 * N - 3 * r - lam
    assert multiplier_sequence(4, N, r).values[0] == 2 * (N - r)


@given(st.integers(1, 7), st.data())
def test_multiplier_closed_forms(N, data):
    r = data.draw(st.integers(0, N))
    lam = data.draw(st.integers(-r, r))
    for k, v in enumerate(multiplier_sequence(3, N, r, lam).values):
        assert v == (k + 1) * (2 * N - 3 * r - lam - 2 * k)
    for k, v in enumerate(multiplier_sequence(4, N, r).values):
        assert v == (k + 1) * (2 * (N - r) - k)


def test_multipliers_on_origin_c3_n3_oracle():
    # frozen from the dict oracle: A_- A_+^{k+1} delta = m_k A_+^k delta
    adj = oracles.graph(3, 3)
    f = {(0, 0, 0): 1}
    chain = [f]
    for _ in range(4):
        chain.append(oracles.apply(adj, chain[-1], "+"))
    ms = []
    for k in range(3):
        back = oracles.apply(adj, chain[k + 1], "-")
        ratios = {back[v] // chain[k][v] for v in chain[k] if chain[k].get(v)}
        assert all(back[v] == 0 for v in back if not chain[k].get(v))
        assert len(ratios) == 1
        ms.append(ratios.pop())
    assert ms == [6, 8, 6]
    assert multiplier_sequence(3, 3, 0, 0).values == (6, 8, 6, 0)


def test_level_matrix_c3_n2_r0():
    L = level_matrix(3, 2, 0, 0)
    assert L.diag == (0, 1, 2)
    assert L.sub == (1, 1)
    # the recursion gives m(0,1,0) = 4 + (4 - 4) = 4
    assert L.super == (4, 4)
    W = build_W(ops(3, 2), (0, 0))
    assert level_matrix_check(ops(3, 2), W).passed


def test_level_matrix_rejects_m5():
    with pytest.raises(ValueError):
        level_matrix(5, 2, 0)
    with pytest.raises(ValueError):
        multiplier_sequence(3, 2, 3)


def test_truncated_m4_level_matrix_does_not_close():
    o = ops(4, 2)
    W = build_W(o, (0, 0))
    assert level_matrix_check(o, W).passed
    assert not level_matrix_check(o, W, truncated=True).passed
    assert level_matrix(4, 2, 0).size == 5
    assert level_matrix(4, 2, 0, truncated=True).size == 3


def test_c3_chain_dies_early_but_level_matrix_holds():
    o = ops(3, 2)
    W = build_W(o, (1, 1))
    # symmetric pair on each axis, minus the mean: one vector
    assert W.dim == 1
    assert multiplier_sequence(3, 2, 1, 1).values[0] == 0
    assert not (o.A_plus @ W.vectors.T).any()
    assert level_matrix_check(o, W).passed


# -- Hadamard ----------------------------------------------------------------

def test_hadamard_antisymmetric_example():
    t = table(3, 2)
    H = hadamard_eigenbasis(t, (0, 1), 0)
    assert H.dim == 1
    f = H.vectors[0]
    assert np.array_equal(ops(3, 2).A0 @ f, -2 * f)
    assert f[t.index((1, 1))] == 1 and f[t.index((1, -1))] == -1


@given(st.integers(1, 4), st.data())
def test_hadamard_eigenvalue_formula(N, data):
    t, o = table(3, N), ops(3, N)
    S = data.draw(st.lists(st.integers(0, N - 1), unique=True))
    s = data.draw(st.integers(0, len(S)))
    H = hadamard_eigenbasis(t, S, s)
    for f in H.vectors:
        assert np.array_equal(o.A0 @ f, (2 * s - len(S)) * f)


def test_hadamard_errors():
    with pytest.raises(ValueError):
        hadamard_eigenbasis(table(3, 2), (0, 0), 0)
    with pytest.raises(ValueError):
        hadamard_eigenbasis(table(5, 2), (0,), 0)


# -- W spaces ----------------------------------------------------------------

def test_w_m4_two_ways():
    o = ops(4, 2)
    W = build_W(o, (1, 0))
    t = o.table
    b = t.block((1, 0))
    order = [tuple(c) for c in t.coords]
    Am = oracles.dense(oracles.graph(4, 2), order, "-")[:, b.start:b.stop]
    assert W.dim == len(b) - oracles.frac_rank(Am.tolist())
    assert not (o.A_minus @ W.vectors.T).any()


def test_m5_r1_minus_one_is_mean_zero():
    o = ops(5, 3)
    t = o.table
    R = o.R1.block(t, (1, 0), (1, 0))
    K = nullspace(R + np.eye(len(R), dtype=np.int64))
    assert K.shape[0] > 0
    assert not K.sum(axis=1).any()
    b = t.block((1, 0))
    full = np.zeros((K.shape[0], t.size), dtype=np.int64)
    full[:, b.start:b.stop] = K
    assert not (o.A_minus @ full.T).any()


@pytest.mark.parametrize("m,N", [(3, 3), (4, 3), (5, 2)])
def test_w_in_kernel_and_eigen(m, N):
    o = ops(m, N)
    for W in all_W(o):
        assert W.is_independent()
        X = W.vectors.T
        assert not (o.A_minus @ X).any()
        if m == 3:
            assert np.array_equal(o.A0 @ X, W.params["lam"] * X)
        if m == 5:
            assert np.array_equal(o.R1 @ X, W.params["lam"] * X)
            assert np.array_equal(o.A0 @ X, W.params["mu"] * X)


def test_reflection_spectrum_integral():
    assert reflection_spectrum(ops(5, 3), (2, 0)) == {-2: 3, 0: 6, 2: 3}


def test_build_w_errors():
    with pytest.raises(ValueError):
        build_W(ops(5, 2), (1, 0))
    with pytest.raises(ValueError):
        build_W(ops(3, 2), (3, 0))


# -- V spaces ----------------------------------------------------------------

def test_v_m4_origin():
    o = ops(4, 2)
    t = o.table
    d = np.zeros(t.size, dtype=np.int64)
    d[0] = 1
    powers = [d, o.A_plus @ d, o.A_plus @ o.A_plus @ d]
    assert rank(np.array(powers)) == 3
    from cyclespace.invariant import SubspaceBasis
    short = SubspaceBasis(4, 2, np.array(powers), ())
    assert not verify_invariance(short, o.A)
    V = build_V(o, build_W(o, (0, 0)))
    assert V.dim == 5
    assert verify_invariance(V, o.A)


def test_v_c5_origin_restricted_to_ball():
    o = ops(5, 4)
    V = build_V(o, build_W(o, (0, 0, 0, 0)))
    ball = o.table.ball(3)
    assert rank(V.vectors[:, ball]) == 6


@pytest.mark.parametrize("m,N", [(3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2)])
def test_every_v_invariant_and_corruption_caught(m, N):
    o = ops(m, N)
    for _, V in all_V(o):
        assert V.is_independent()
        assert verify_invariance(V, o.A)
        bad = corrupt(V, o.table, seed=1)
        if bad is not None:
            assert not verify_invariance(bad, o.A)


def test_v_spaces_exhaust_for_odd_m():
    for m, N in [(3, 3), (5, 3)]:
        o = ops(m, N)
        assert rank(np.vstack([V.vectors for _, V in all_V(o)])) == m ** N


def test_v_spaces_do_not_exhaust_for_m4():
    o = ops(4, 3)
    assert rank(np.vstack([V.vectors for _, V in all_V(o)])) == 52


def test_verify_invariance_empty():
    o = ops(5, 2)
    with pytest.raises(ValueError):
        verify_invariance(build_V(o, build_W(o, (0, 0, 1, 0))), o.A)


def test_json_export():
    o = ops(3, 2)
    V = build_V(o, build_W(o, (0, 0)))
    doc = V.to_json()
    assert doc["meta"]["dim"] == V.dim == 3
    rebuilt = np.zeros_like(V.vectors)
    for i, entries in enumerate(doc["vectors"]):
        for j, num, den in entries:
            rebuilt[i, j] = num // den
    assert np.array_equal(rebuilt, V.vectors)


# -- multiplier and coordinate checks ---------------------------------------

@pytest.mark.parametrize("m,N", [(3, 3), (4, 3)])
def test_multiplier_and_coordinates(m, N):
    o = ops(m, N)
    for W in all_W(o):
        assert multiplier_check(o, W).passed
        assert coordinate_check(o, W).passed


# -- eigenvalue shifts ---------------------------------------------------------

def test_hadamard_shift_c3():
    assert all(c.passed for c in eigen_shift_checks(ops(3, 3)))


def test_r1_under_raise_to_level_two():
    """An R_1-eigenvector on Sigma_{1,0} does not keep its eigenvalue under
    A_(1,0)->(0,1); the image picks up the twisted outer term instead."""
    o = ops(5, 2)
    t = o.table
    checks = {c.name: c.passed for c in eigen_shift_checks(o)}
    assert checks["R_1 eigenvalue +1 under A_(p,q)->(p+1,q)"]
    assert not checks["R_1 eigenvalue kept under A_(p,q)->(p-1,q+1) [stated]"]
    assert checks["R_1 A f = lam A f - T f under A_(p,q)->(p-1,q+1) [corrected]"]
    f = np.zeros(t.size, dtype=np.int64)
    f[t.index((1, 0))], f[t.index((-1, 0))] = 1, -1
    g = o.sub((1, 0), (0, 1)) @ f
    assert np.array_equal(o.R1 @ f, -f)
    assert g.any() and not (o.R1 @ g).any()
