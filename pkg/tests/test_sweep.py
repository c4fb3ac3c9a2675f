import math

import numpy as np
import pytest

from ringstar.config import load
from ringstar.errors import ConfigError
from ringstar.network import NetworkConfig
from ringstar.sweep import (
    METRICS,
    SweepAxis,
    SweepSpec,
    correlate_measures,
    evaluate,
    run_sweep,
    scan_bifurcation,
    spearman,
)

BASE = NetworkConfig(n_nodes=16, r_neighbors=2, n_total=800, n_transient=400, seed=7,
                     d_sigma=0.1, d_mu=0.1, p_sigma=0.8, p_mu=0.6)


def spec2d(**kw):
    args = dict(
        axis1=SweepAxis("sigma0", -0.01, 0.01, 3),
        axis2=SweepAxis("mu0", -0.001, 0.001, 2),
        base=BASE,
    )
    args.update(kw)
    return SweepSpec(**args)


def assert_results_equal(a, b):
    for name in METRICS:
        np.testing.assert_array_equal(a.grids[name], b.grids[name])
    np.testing.assert_array_equal(a.diverged, b.diverged)
    np.testing.assert_array_equal(a.last_instance, b.last_instance)


def test_cells_equal_direct_evaluation():
    spec = spec2d()
    res = run_sweep(spec, workers=1)
    assert res.grids["gamma_avg"].shape == (3, 2)
    for idx in np.ndindex(*spec.shape):
        out = evaluate(spec.cell_config(idx), spec.sampen)
        for name in METRICS:
            assert res.grids[name][idx] == out[name] or (math.isnan(out[name]) and math.isnan(res.grids[name][idx]))


def test_cell_config_only_changes_swept_fields_and_seed():
    spec = spec2d()
    cfg = spec.cell_config((2, 1))
    assert cfg.sigma0 == 0.01 and cfg.mu0 == 0.001
    changed = {k for k, v in cfg.to_dict().items() if v != BASE.to_dict()[k]}
    assert changed == {"sigma0", "mu0", "seed"}
    assert spec.cell_seed(0, 0) != spec.cell_seed(1, 0) != spec.cell_seed(1, 1)
    assert spec.cell_seed(3, 0) == spec2d().cell_seed(3, 0)


def test_k_axis_routes_to_neuron():
    spec = SweepSpec(SweepAxis("k", -1.0, 1.0, 3), base=BASE)
    assert spec.cell_config((2,)).neuron.k == 1.0


def test_worker_count_does_not_change_results():
    spec = spec2d()
    assert_results_equal(run_sweep(spec, workers=1), run_sweep(spec, workers=3))


def test_counts_and_completion():
    res = run_sweep(spec2d(), workers=1)
    assert res.complete and res.completed.all()
    assert res.n_diverged + res.n_valid == 6


def test_divergent_cells_are_flagged():
    # a large positive gain on the flux term blows up quickly
    spec = SweepSpec(SweepAxis("k", 3.0, 40.0, 2), base=BASE.with_params(n_total=200, n_transient=100))
    res = run_sweep(spec, workers=1)
    assert res.diverged[1]
    assert math.isnan(res.grids["gamma_avg"][1])
    assert res.n_diverged + res.n_valid == 2


def test_samples_are_averaged():
    spec = spec2d(samples_per_cell=3)
    res = run_sweep(spec, workers=1)
    assert res.samples["sync_error"].shape == (3, 2, 3)
    np.testing.assert_allclose(res.grids["sync_error"], res.samples["sync_error"].mean(axis=-1))
    assert res.last_instance.shape == (3, 2, 3, 16)


def test_spec_validation():
    with pytest.raises(ConfigError):
        SweepAxis("n_nodes", 0, 1, 3).validate()
    with pytest.raises(ConfigError):
        SweepAxis("sigma0", 0, 1, 1).validate()
    with pytest.raises(ConfigError):
        spec2d(axis2=SweepAxis("sigma0", 0, 1, 2)).validate()
    with pytest.raises(ConfigError):
        scan_bifurcation(spec2d())


def test_spearman_undefined_cases():
    assert spearman([1, 2], [3, 4]) is None
    assert spearman([1, 1, 1], [1, 2, 3]) is None
    assert spearman([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)


def test_correlate_measures_keys():
    res = run_sweep(spec2d(), workers=1)
    out = correlate_measures(res)
    assert set(out) == {"E_vs_gamma", "SE_vs_E", "SE_vs_gamma"}
    for entry in out.values():
        assert len(entry["x"]) == len(entry["y"]) <= 6


@pytest.mark.slow
def test_flux_gain_scan_desynchronizes_inside_window():
    preset = load("fig13e_k", "sweep")
    spec = SweepSpec(SweepAxis("k", -1.0, 4.0, 11), base=preset.base)
    res = scan_bifurcation(spec, workers=1)
    k = spec.axis1.values
    e = res.grids["sync_error"]
    assert np.all(e[(k >= 0.5) & (k <= 2.5)] > 0.05)
    assert np.all(e[(k <= -0.5) | (k >= 3.5)] < 0.01)


@pytest.mark.slow
def test_negative_star_coupling_synchronizes():
    preset = load("fig13b_mu0", "sweep")
    spec = SweepSpec(SweepAxis("mu0", -0.00045, -0.0002, 4), base=preset.base)
    res = scan_bifurcation(spec, workers=1)
    assert np.all(res.grids["sync_error"] < 0.01)
