import os

import numpy as np
import pytest

import levelspec

DATA = os.environ.get(
    "LEVELSPEC_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data")
)


def test_bump_kernel():
    assert levelspec.bump_kernel(np.zeros(2), 1.0) == pytest.approx(np.exp(-1.0))
    assert levelspec.bump_kernel(np.array([0.5, 0.0]), 1.0) == pytest.approx(np.exp(-4.0))
    assert levelspec.bump_kernel(np.array([1.0, 0.0]), 1.0) == 0.0


def test_spectral_pipeline_on_separated_groups():
    pts = np.array([[0.0, 0.0], [0.3, 0.0], [5.0, 5.0], [5.2, 5.1], [-6.0, 2.0]])
    g = levelspec.build_graph(pts, 1.0)
    assert g.size == 5
    q = levelspec.markov_matrix(g)
    np.testing.assert_allclose(q.sum(axis=1), 1.0, atol=1e-12)
    e = levelspec.eigendecompose(g)
    zeros = levelspec.count_zero_eigenvalues(e, 1e-8)
    comps = levelspec.connected_components(pts, 1.0)
    assert zeros.count == comps.count == 3
    ref = levelspec.dense_reference_spectrum(g)
    np.testing.assert_allclose(e.eigenvalues, ref, atol=1e-9)
    rho = levelspec.embed(e, zeros.count)
    km = levelspec.kmeans(rho, zeros.count)
    assert levelspec.adjusted_rand_index(km.assignments, comps.labels) == 1.0
    assert levelspec.align_to_indicators(rho, comps.labels).residual < 1e-6


def test_density_and_level_set():
    spec = levelspec.MixtureSpec()
    spec.seed = 4
    sample = levelspec.simulate_mixture(spec, 300)
    assert sample.points.shape == (300, 2)
    assert set(sample.labels) <= {0, 1, 2, 3}
    bw = levelspec.lscv_bandwidth(sample, [0.05, 0.1, 0.2, 0.4])
    model = levelspec.kde_fit(sample, bw)
    values = model(sample.points)
    t = levelspec.select_level_by_retention(values, 0.85)
    ex = levelspec.extract_level_set(model, t)
    assert len(ex.retained) == 255


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        levelspec.kmeans(np.zeros((3, 1)), 2)
    spec = levelspec.MixtureSpec()
    model = levelspec.kde_fit(levelspec.simulate_mixture(spec, 10), 0.3)
    with pytest.raises(RuntimeError):
        levelspec.extract_level_set(model, 1e9)


def test_run_pipeline_from_keywords(tmp_path):
    s = levelspec.run_pipeline(
        input=os.path.join(DATA, "three_blobs.csv"),
        retain_fraction=1.0,
        scale_h=1.0,
        out=str(tmp_path),
    )
    assert s.ell_hat == 3
    assert s.component_count == 3
    assert s.ari == 1.0
    assert (tmp_path / "summary.json").exists()
    base = levelspec.run_baseline(n=200, seed=1, scale_h=0.4)
    assert base.jn == 200
    assert base.t == 0.0
