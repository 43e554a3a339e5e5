import dataclasses
from collections import Counter

import numpy as np
import pytest

from conftest import ops, ssl_report, table
from cyclespace import SslConfig, classify, decompose, gft, spatial_projection, spectral_projection
from cyclespace.ssl import (fig3_data, fig4_data, fig5_data, level_vector_check, plateau_lengths,
                            report_csv, report_json, run, class_table_lines)


def test_spatial_projection():
    t = table(5, 4)
    assert np.trace(spatial_projection(t, 3)) == 121
    assert np.array_equal(spatial_projection(t, 8), np.eye(625))
    Q0 = spatial_projection(t, 0)
    assert Q0.sum() == 1 and Q0[0, 0] == 1


def test_spectral_projection():
    fb = gft(5, 4)
    P = spectral_projection(fb, 3)
    assert abs(np.trace(P).real - 121) < 1e-8
    assert np.abs(P @ P - P).max() < 1e-10
    assert np.abs(P - P.conj().T).max() < 1e-10
    assert np.abs(spectral_projection(fb, 8) - np.eye(625)).max() < 1e-10


def test_k0_rank_one():
    fb = gft(5, 4)
    # the same ball on both sides: <P delta_0, delta_0> = 1/625
    r = run(SslConfig(5, 4, 0), fb)
    assert r.rank == 1 and r.values[0] == pytest.approx(1 / 625, abs=1e-12)
    # spatial ball of radius 0 against the radius-3 spectral projection
    cfg = SslConfig(5, 4, 0, cluster_tol=1e-12)
    r = decompose(spectral_projection(fb, 3), spatial_projection(fb.table, 0), cfg, fb)
    assert r.values.tolist() == pytest.approx([121 / 625], abs=1e-12)


def test_c5_n4_report_invariants():
    r = ssl_report(5, 4, 3)
    assert r.rank == 121 == len(r.values)
    assert r.diagnostics["ok"] and not r.diagnostics["ambiguous"]
    assert r.values.min() > -1e-10 and r.values.max() < 1 + 1e-10
    assert sum(c.dim * c.multiplicity for c in r.classes) == 121
    assert not any(c.base.counts == (0, 1) for c in r.classes)
    assert np.allclose(np.linalg.norm(r.z, axis=0), 1)


def test_c5_n4_selected_classes():
    got = {(c.base.counts, c.r1): (c.dim, c.multiplicity) for c in ssl_report(5, 4, 3).classes}
    assert got[(3, 0), -3] == (4, 1)
    assert got[(1, 0), -1] == (4, 6)
    assert got[(1, 0), 1] == (3, 6)


def test_plateaus_follow_classes():
    r = ssl_report(5, 4, 3)
    expected = Counter()
    for c in r.classes:
        expected[c.dim] += c.multiplicity
    assert Counter(plateau_lengths(r.values)) == expected


def test_level_vectors():
    ok, n = level_vector_check(ssl_report(5, 4, 3))
    assert ok and n == 6


def test_level_vector_check_detects_nonconstant():
    r = ssl_report(5, 4, 3)
    bad = np.zeros((625, 1))
    bad[1, 0], bad[2, 0] = 1, 2
    assert level_vector_check(r, bad) == (False, 1)


def test_small_c3():
    r = run(SslConfig(3, 2, 1))
    assert r.rank == 5
    assert sum(c.dim * c.multiplicity for c in r.classes) == 5


def test_convention_swap_leaves_spectrum():
    a = run(SslConfig(5, 3, 2))
    b = run(SslConfig(5, 3, 2), gft(5, 3, sign=1))
    assert np.abs(a.values - b.values).max() < 1e-10


def test_classification_independent_of_basis_within_clusters():
    r = ssl_report(5, 4, 3)
    rng = np.random.default_rng(7)
    z = r.z.copy()
    for a, b in r.clusters:
        G = rng.normal(size=(b - a, b - a)) + 1j * rng.normal(size=(b - a, b - a))
        Uq, _ = np.linalg.qr(G)
        z[:, a:b] = z[:, a:b] @ Uq
    r2 = dataclasses.replace(r, z=z, classes=[], cluster_class=[], diagnostics=dict(r.diagnostics))
    classify(r2, ops(5, 4))
    key = lambda rep: [(c.base, c.r1, c.dim, c.multiplicity, c.clusters) for c in rep.classes]
    assert key(r2) == key(r)


def test_m4_has_no_reflection_label():
    r = run(SslConfig(4, 3, 2))
    assert all(c.r1 is None for c in r.classes)
    assert all("n/a" in line.split() for line in class_table_lines(r)[1:-1])


def test_config_validation():
    for bad in (SslConfig(5, 4, 9), SslConfig(5, 4, -1), SslConfig(6, 2, 1), SslConfig(5, 2, 1, zero_tol=0)):
        with pytest.raises(ValueError):
            bad.validate()


def test_exports():
    r = ssl_report(5, 4, 3)
    assert report_csv(r) == report_csv(r)
    rows = report_csv(r).splitlines()
    assert len(rows) == 122 and rows[0].startswith("index,value")
    import json
    doc = json.loads(report_json(r))
    assert doc["rank"] == 121 and len(doc["eigenvectors"]["rows"]) == 121
    assert len(fig3_data(r).splitlines()) == 122
    assert fig4_data(r).splitlines()[0].split()[2:] == [f"v{i}" for i in range(1, 7)]
    assert len(fig5_data(r).splitlines()[0].split()) == 2 + len(r.classes)
