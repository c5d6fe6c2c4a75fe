import math

import numpy as np
import pytest

import magspec


def test_kagome_invariants():
    inv = magspec.invariants(magspec.kagome())
    assert inv["beta"] == 4
    assert inv["d"] == 2
    assert inv["I"] == 3
    assert inv["tree_count"] == 12
    assert inv["lattice_image_ok"]


def test_json_roundtrip():
    g = magspec.hexagonal()
    h = magspec.Graph.from_json(g.to_json())
    assert h.to_json() == g.to_json()
    assert (h.vertex_count, h.edge_count, h.betti) == (2, 3, 2)


def test_malformed_json_raises():
    with pytest.raises(magspec.Error):
        magspec.Graph.from_json("{")


def test_fiber_matrix_matches_closed_form():
    g = magspec.hexagonal()
    rng = np.random.default_rng(7)
    for _ in range(5):
        t = rng.uniform(-math.pi, math.pi, 2)
        m = magspec.fiber_matrix(g, t)
        assert np.allclose(m, m.conj().T, atol=1e-12)
        # two sites, each of degree 3; off-diagonal modulus |1 + e^{it1} + e^{it2}|
        s = abs(m[0, 1])
        expected = sorted([3 - s, 3 + s])
        assert np.allclose(np.linalg.eigvalsh(m), expected, atol=1e-10)
        assert s <= 3 + 1e-12


def test_z2_bands_and_table():
    g = magspec.zd(2)
    summary = magspec.bands(g, grid=21)
    (lo, hi), = summary["bands"]
    assert lo == pytest.approx(0.0, abs=1e-9)
    assert hi == pytest.approx(8.0, abs=1e-9)
    thetas, eig = magspec.band_table(g, grid=11)
    assert thetas.shape[1] == 2 and eig.shape[1] == 1
    expected = 4 - 2 * np.cos(thetas[:, 0]) - 2 * np.cos(thetas[:, 1])
    assert np.allclose(eig[:, 0], expected, atol=1e-10)


def test_kagome_verify_passes():
    report = magspec.verify(magspec.kagome(), grid=31)
    assert report["passed"], report["first_failure"]
    assert report["first_failure"] is None
    assert len(report["checks"]) > 10


def test_butterfly_row_count():
    rows = magspec.butterfly(magspec.zd(2), max_q=4, grid=11)
    # sum of Euler phi(q) for q = 1..4
    assert len(rows) == 1 + 1 + 2 + 2
    for r in rows:
        assert len(r["bands"]) == r["q"]
        assert r["flux"] == pytest.approx(r["p"] / r["q"])


def test_build_periodic_minimal():
    g, positions = magspec.build_periodic(magspec.kagome(), minimal=True)
    assert g.vertex_count == 3 and len(positions) == 3
    nonzero = [e for e in g.edges if any(e["index"])]
    assert len(nonzero) == 3
    assert magspec.invariants(g)["I"] == 3


def test_random_graph_is_valid():
    for seed in range(1, 6):
        inv = magspec.invariants(magspec.random_graph(seed))
        assert inv["d"] <= inv["I"] <= inv["beta"]
        assert inv["lattice_image_ok"]
