"""Synchronisation and pattern metrics over a post-transient trajectory block.

Node indices in this module are 1-based, matching the network numbering
(node 2, the first ring node, is the default baseline).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DegenerateSeries

VARIANCE_FLOOR = 1e-30

SOLITARY_RANGE = (-0.38, -0.15)
COHERENT_MIN = 0.75


class Regime(str, Enum):
    COHERENT = "Coherent"
    INTERMEDIATE = "Intermediate"
    SOLITARY = "Solitary"
    OUT_OF_RANGE = "OutOfRange"
    UNDEFINED = "Undefined"


def _history(traj) -> np.ndarray:
    x = traj.x if hasattr(traj, "x") else traj
    x = np.asarray(x, dtype=float)
    if x.ndim != 2:
        raise ValueError("expected an (N, T) block of x histories")
    return x


def cross_correlation(traj, baseline: int = 2) -> np.ndarray:
    """Correlation coefficient of every node's x series with the baseline node's.

    Nodes whose variance falls below ``VARIANCE_FLOOR`` get NaN (Undefined).
    The baseline entry is exactly 1.
    """
    x = _history(traj)
    if x.shape[1] < 2:
        raise ValueError("need at least 2 time columns")
    if not 1 <= baseline <= x.shape[0]:
        raise IndexError(f"baseline {baseline} out of range")
    dev = x - x.mean(axis=1, keepdims=True)
    var = np.mean(dev * dev, axis=1)
    b = baseline - 1
    if var[b] < VARIANCE_FLOOR:
        raise DegenerateSeries(f"baseline node {baseline} has zero variance")
    cov = np.mean(dev * dev[b], axis=1)
    gamma = np.full(x.shape[0], np.nan)
    ok = var >= VARIANCE_FLOOR
    gamma[ok] = cov[ok] / np.sqrt(var[ok] * var[b])
    gamma[b] = 1.0
    return gamma


def gamma_average(gamma_per_node, baseline: int = 2) -> float:
    """Mean of the coefficients over all nodes except the baseline, skipping Undefined ones."""
    g = np.asarray(gamma_per_node, dtype=float)
    mask = np.ones(len(g), dtype=bool)
    mask[baseline - 1] = False
    vals = g[mask]
    vals = vals[~np.isnan(vals)]
    return float(vals.mean()) if len(vals) else math.nan


def sync_error(traj, baseline: int = 2) -> float:
    """Time-averaged |x_b - x_m|, averaged over the N - 1 non-baseline nodes."""
    x = _history(traj)
    b = baseline - 1
    dev = np.abs(x - x[b]).mean(axis=1)
    return float((dev.sum() - dev[b]) / (x.shape[0] - 1))


def label(gamma: float) -> Regime:
    if math.isnan(gamma):
        return Regime.UNDEFINED
    lo, hi = SOLITARY_RANGE
    if gamma < lo:
        return Regime.OUT_OF_RANGE
    if gamma <= hi:
        return Regime.SOLITARY
    if gamma < COHERENT_MIN:
        return Regime.INTERMEDIATE
    return Regime.COHERENT


def classify(gamma_per_node, baseline: int = 2) -> tuple[list[Regime], float]:
    """Per-node regime labels and the solitary fraction N_s / N."""
    labels = [label(float(g)) for g in gamma_per_node]
    labels[baseline - 1] = Regime.COHERENT
    n_solitary = sum(lab is Regime.SOLITARY for lab in labels)
    return labels, n_solitary / len(labels)


def recurrence_matrix(final_states, mode: str = "x") -> np.ndarray:
    """Pairwise distances between final node states.

    ``mode="x"`` uses |x_i - x_j|; ``mode="full"`` the Euclidean norm over (x, y, phi).
    """
    s = np.asarray(final_states, dtype=float)
    if s.ndim == 1:
        s = s[:, None]
    if mode == "x":
        return np.abs(s[:, None, 0] - s[None, :, 0])
    if mode != "full":
        raise ValueError(f"unknown recurrence mode {mode!r}")
    diff = s[:, None, :] - s[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=-1))


def spatial_average(traj) -> np.ndarray:
    x = _history(traj)
    if x.size == 0:
        raise ValueError("empty block")
    return x.mean(axis=0)


@dataclass
class MetricsReport:
    gamma_per_node: np.ndarray
    gamma_avg: float
    sync_error: float
    solitary_fraction: float
    labels: list[Regime]
    last_instance: np.ndarray
    recurrence: np.ndarray | None = None
    sample_entropy: float | None = None
    baseline: int = 2
    counts: dict[str, int] = field(default_factory=dict)

    def to_dict(self, include_matrices: bool = False) -> dict:
        def num(v):
            if v is None:
                return None
            v = float(v)
            return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")

        d = {
            "baseline": self.baseline,
            "gamma_avg": num(self.gamma_avg),
            "sync_error": num(self.sync_error),
            "solitary_fraction": num(self.solitary_fraction),
            "sample_entropy": num(self.sample_entropy),
            "counts": dict(self.counts),
            "gamma_per_node": [num(g) for g in self.gamma_per_node],
            "labels": [lab.value for lab in self.labels],
            "last_instance": [num(v) for v in self.last_instance],
        }
        if include_matrices and self.recurrence is not None:
            d["recurrence"] = self.recurrence.tolist()
        return d


def compute_report(traj, baseline: int = 2, recurrence_mode: str = "x",
                   with_recurrence: bool = True) -> MetricsReport:
    """All trajectory metrics except sample entropy (see ``entropy``)."""
    gamma = cross_correlation(traj, baseline)
    labels, frac = classify(gamma, baseline)
    counts = {r.value: 0 for r in Regime}
    for lab in labels:
        counts[lab.value] += 1
    rec = recurrence_matrix(traj.final, recurrence_mode) if with_recurrence else None
    return MetricsReport(
        gamma_per_node=gamma,
        gamma_avg=gamma_average(gamma, baseline),
        sync_error=sync_error(traj, baseline),
        solitary_fraction=frac,
        labels=labels,
        last_instance=np.asarray(traj.x)[:, -1].copy(),
        recurrence=rec,
        baseline=baseline,
        counts=counts,
    )
