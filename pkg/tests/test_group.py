import itertools
from math import comb

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import table
from cyclespace import (GroupElement, LevelSignature, enumerate_vertices, feasible_signatures,
                        level_set, level_signature, lower_level, neighbors, path_distance,
                        raise_level, reflect)
from cyclespace.group import (cardinality_formula_c3, cardinality_formula_c5,
                              signature_cardinality, signature_of)


def E(m, *c):
    return GroupElement(m, c)


# -- examples ----------------------------------------------------------------

def test_vertex_count_625():
    assert table(5, 4).size == 625


def test_sigma11_occupies_74_to_121():
    assert level_set(5, 4, (1, 1)) == range(73, 121)
    t = table(5, 4)
    assert all(t.signature_at(i) == LevelSignature((1, 1)) for i in range(73, 121))


def test_c3_n1_order():
    t = enumerate_vertices(3, 1)
    assert [tuple(c) for c in t.coords] == [(0,), (-1,), (1,)]


def test_c5_n4_level_set_layout():
    got = [(s.counts, len(level_set(5, 4, s)), level_set(5, 4, s).start + 1)
           for s in feasible_signatures(5, 4) if s.distance <= 3]
    assert got == [((0, 0), 1, 1), ((1, 0), 8, 2), ((2, 0), 24, 10),
                   ((0, 1), 8, 34), ((3, 0), 32, 42), ((1, 1), 48, 74)]


def test_path_distance_examples():
    assert path_distance(E(4, 0, 1, 2, 1)) == 4
    assert path_distance(E(5, -2, 2, 0, 1)) == 5


def test_equi_level_example():
    assert level_signature(E(4, 0, 1, 2, 1)) == level_signature(E(4, -1, 0, 1, 2))


def test_neighbor_examples():
    assert neighbors(E(5, 0, 1)) == {E(5, 1, 1), E(5, -1, 1), E(5, 0, 2), E(5, 0, 0)}
    assert neighbors(E(4, 2)) == {E(4, 1), E(4, -1)}


def test_raise_lower_examples():
    assert raise_level(E(5, -1, 1), 0) == (E(5, -2, 1),)
    assert set(raise_level(E(5, 0, 1), 0)) == {E(5, 1, 1), E(5, -1, 1)}
    assert lower_level(E(5, -1, 1), 0) == (E(5, 0, 1),)
    assert set(lower_level(E(4, 2, 0), 0)) == {E(4, 1, 0), E(4, -1, 0)}


def test_reflect_self_negation_mod4():
    assert reflect(E(4, 2, 0), 0) == E(4, 2, 0)


def test_cardinality_examples():
    assert signature_cardinality(5, 4, (2, 0)) == 24
    assert signature_cardinality(5, 4, (1, 1)) == 48
    assert signature_cardinality(3, 7, (0,)) == 1


def test_errors():
    with pytest.raises(ValueError):
        E(5, 3)
    with pytest.raises(ValueError):
        E(6, 0)
    with pytest.raises(ValueError):
        raise_level(E(5, 2), 0)
    with pytest.raises(ValueError):
        lower_level(E(5, 0), 0)
    with pytest.raises(IndexError):
        reflect(E(5, 0), 1)


# -- properties --------------------------------------------------------------

small = st.sampled_from([(3, 1), (3, 2), (3, 3), (3, 4), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3)])


@st.composite
def vertex(draw):
    m, N = draw(small)
    lo, hi = -((m - 1) // 2), m // 2
    return GroupElement(m, tuple(draw(st.integers(lo, hi)) for _ in range(N)))


@given(small)
def test_level_sets_partition(mN):
    m, N = mN
    t = table(m, N)
    sizes = [signature_cardinality(m, N, s) for s in feasible_signatures(m, N)]
    assert sum(sizes) == m ** N == t.size
    starts = [level_set(m, N, s) for s in feasible_signatures(m, N)]
    assert [r.start for r in starts] == [0] + [r.stop for r in starts[:-1]]
    for s in feasible_signatures(m, N):
        assert all(signature_of(m, t.coords[i]) == s for i in level_set(m, N, s))


@given(st.integers(1, 8))
def test_closed_form_cardinalities(N):
    assert sum(cardinality_formula_c3(N, r) for r in range(N + 1)) == 3 ** N
    assert sum(cardinality_formula_c5(N, p, q) for q in range(N + 1) for p in range(N - q + 1)) == 5 ** N
    for p, q in itertools.product(range(N + 1), repeat=2):
        if p + q <= N:
            assert signature_cardinality(5, N, (p, q)) == cardinality_formula_c5(N, p, q)
    assert signature_cardinality(4, N, (0, N)) == 1


@given(vertex())
def test_adjacency_symmetric_and_matches_oracle(v):
    nb = neighbors(v)
    assert all(v in neighbors(w) for w in nb)
    ref = {tuple(w) for w in oracles.graph(v.m, v.N)[v.coords]}
    assert {w.coords for w in nb} == ref


@given(vertex())
def test_distance_changes_by_at_most_one(v):
    assert path_distance(v) == oracles.dist(v.coords)
    for w in neighbors(v):
        assert abs(path_distance(w) - path_distance(v)) <= 1


@given(vertex(), st.data())
def test_raise_lower_duality(v, data):
    k = data.draw(st.integers(0, v.N - 1))
    if v.levels[k] < v.m // 2:
        for w in raise_level(v, k):
            assert path_distance(w) == path_distance(v) + 1
            assert v in lower_level(w, k)
    if v.levels[k] > 0:
        for w in lower_level(v, k):
            assert path_distance(w) == path_distance(v) - 1
            assert v in raise_level(w, k)


@given(vertex(), st.data())
def test_reflection_preserves_signature(v, data):
    k = data.draw(st.integers(0, v.N - 1))
    w = reflect(v, k)
    assert level_signature(w) == level_signature(v)
    assert reflect(w, k) == v


@given(small)
def test_table_index_roundtrip(mN):
    t = table(*mN)
    for i in range(0, t.size, max(1, t.size // 17)):
        assert t.index(t.element(i)) == i
    d = t.distances
    assert (d[1:] >= d[:-1]).all()


def test_budget():
    from cyclespace import BudgetExceeded
    with pytest.raises(BudgetExceeded):
        enumerate_vertices(5, 9, limit=1000)
