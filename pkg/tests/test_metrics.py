import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from ringstar.errors import DegenerateSeries
from ringstar.metrics import (
    Regime,
    classify,
    compute_report,
    cross_correlation,
    gamma_average,
    label,
    recurrence_matrix,
    spatial_average,
    sync_error,
)
from ringstar.network import NetworkConfig, run

import oracles

TOY = np.array([
    [0.1, 0.4, 0.2, 0.9],
    [0.3, 0.5, 0.1, 0.7],
    [0.9, 0.2, 0.6, 0.1],
])

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_toy_block_frozen_values():
    g = cross_correlation(TOY)
    # exact rational forms: (3/50)/sqrt(19/4000) and (-11/200)/sqrt(41/8000)
    assert g[0] == pytest.approx(0.8705715001320139, abs=1e-14)
    assert g[1] == 1.0
    assert g[2] == pytest.approx(-0.768273325346536, abs=1e-14)
    assert sync_error(TOY) == pytest.approx(0.325, abs=1e-15)
    assert gamma_average(g) == pytest.approx((g[0] + g[2]) / 2)


def test_perfect_and_anti_correlation():
    t = np.linspace(0, 1, 50)
    block = np.vstack([2 * t + 1, t, -3 * t])
    g = cross_correlation(block)
    assert g[0] == pytest.approx(1.0, abs=1e-12)
    assert g[2] == pytest.approx(-1.0, abs=1e-12)


def test_identical_nodes():
    t = np.sin(np.arange(100.0))
    block = np.tile(t, (5, 1))
    assert gamma_average(cross_correlation(block)) == pytest.approx(1.0, abs=1e-12)
    assert sync_error(block) == 0.0


def test_degenerate_series():
    block = np.vstack([np.ones(10), np.arange(10.0), np.arange(10.0) ** 2])
    g = cross_correlation(block)
    assert math.isnan(g[0])
    assert label(g[0]) is Regime.UNDEFINED
    assert gamma_average(g) == pytest.approx(g[2])
    with pytest.raises(DegenerateSeries):
        cross_correlation(np.vstack([np.arange(5.0), np.zeros(5)]))


def test_gamma_average_cases():
    assert gamma_average([0.5, 1.0, -0.5, 0.3]) == pytest.approx(0.1)
    assert math.isnan(gamma_average([math.nan, 1.0]))


@pytest.mark.parametrize(
    "g, regime",
    [
        (-0.172, Regime.SOLITARY),
        (0.9, Regime.COHERENT),
        (0.5, Regime.INTERMEDIATE),
        (-0.38, Regime.SOLITARY),
        (-0.15, Regime.SOLITARY),
        (-0.1499, Regime.INTERMEDIATE),
        (0.75, Regime.COHERENT),
        (0.7499, Regime.INTERMEDIATE),
        (-0.39, Regime.OUT_OF_RANGE),
        (1.0, Regime.COHERENT),
        (math.nan, Regime.UNDEFINED),
    ],
)
def test_labels(g, regime):
    assert label(g) is regime


@given(st.lists(st.one_of(st.floats(-1, 1), st.just(math.nan)), min_size=2, max_size=50))
def test_partition_sums_to_n(gammas):
    labels, frac = classify(gammas)
    assert len(labels) == len(gammas)
    assert labels[1] is Regime.COHERENT
    counts = {r: sum(lab is r for lab in labels) for r in Regime}
    assert sum(counts.values()) == len(gammas)
    assert frac == counts[Regime.SOLITARY] / len(gammas)


@given(arrays(float, (6, 3), elements=finite))
def test_recurrence_matches_brute_force(states):
    full = recurrence_matrix(states, mode="full")
    np.testing.assert_allclose(full, oracles.pairwise_distances(states.tolist()), rtol=1e-12, atol=1e-12)
    assert np.all(np.diag(full) == 0.0)
    np.testing.assert_array_equal(full, full.T)
    xonly = recurrence_matrix(states, mode="x")
    np.testing.assert_array_equal(xonly, np.abs(states[:, :1] - states[:, 0]))


def test_recurrence_rejects_unknown_mode():
    with pytest.raises(ValueError):
        recurrence_matrix(np.zeros((3, 3)), mode="manhattan")


def test_spatial_average():
    np.testing.assert_allclose(spatial_average(TOY), TOY.mean(axis=0))


@given(
    arrays(float, (4, 30), elements=st.floats(-1, 1)),
    st.floats(0.1, 10),
    st.floats(-5, 5),
)
def test_correlation_affine_invariance(block, scale, shift):
    if np.any(block.std(axis=1) < 1e-3):
        return
    g = cross_correlation(block)
    g2 = cross_correlation(block * scale + shift)
    np.testing.assert_allclose(g, g2, atol=1e-9)
    assert np.all(np.abs(g) <= 1 + 1e-12)
    # E scales with amplitude and ignores a common shift
    assert sync_error(block * scale + shift) == pytest.approx(scale * sync_error(block), rel=1e-9, abs=1e-12)


def test_report_from_run():
    cfg = NetworkConfig(n_nodes=20, r_neighbors=2, sigma0=0.005, mu0=0.0005, n_total=600, n_transient=300, seed=2)
    rep = compute_report(run(cfg))
    assert rep.gamma_per_node.shape == (20,)
    assert sum(rep.counts.values()) == 20
    assert rep.recurrence.shape == (20, 20)
    d = rep.to_dict()
    assert set(d) >= {"gamma_avg", "sync_error", "solitary_fraction", "labels"}
