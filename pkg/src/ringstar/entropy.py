"""Sample entropy with Chebyshev template matching.

Conventions follow the widely used ``nolds.sampen`` (0.5 series): both
template lengths are compared over the same ``len(x) - m`` start indices,
self-matches are excluded, a pair matches when its Chebyshev distance is
strictly below the tolerance, and the default tolerance is 0.2 times the
population standard deviation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DegenerateSeries, TooShort


@dataclass(frozen=True)
class SampEnConfig:
    emb_dim: int = 2
    # absolute radius; None means rel_tolerance * std(series)
    tolerance: float | None = None
    rel_tolerance: float = 0.2
    # Chebyshev distance <= r instead of < r
    closed: bool = False

    def __post_init__(self):
        if self.emb_dim < 1:
            raise ValueError("emb_dim must be >= 1")
        if self.tolerance is not None and not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


def resolve_tolerance(series, cfg: SampEnConfig = SampEnConfig()) -> float:
    x = np.asarray(series, dtype=float)
    if x.size == 0:
        raise ValueError("empty series")
    r = cfg.tolerance if cfg.tolerance is not None else cfg.rel_tolerance * float(np.std(x))
    if r <= 0:
        raise DegenerateSeries("tolerance resolves to 0 (constant series)")
    return r


def match_counts(series, emb_dim: int, r: float, closed: bool = False) -> tuple[int, int]:
    """Return (A, B): matching template pairs of length m+1 and m.

    Pairs (i, j), i < j, range over the first ``len(x) - m`` templates.
    """
    x = np.ascontiguousarray(series, dtype=float)
    if x.size - emb_dim < 2:
        return 0, 0
    a, b = _kernels.sampen_counts(x, int(emb_dim), float(r), bool(closed))
    return int(a), int(b)


def match_counts_reference(series, emb_dim: int, r: float, closed: bool = False) -> tuple[int, int]:
    """Plain double loop over template pairs. O(T^2 m); for checking only."""
    x = [float(v) for v in series]
    m = emb_dim
    n_templates = len(x) - m
    a = b = 0
    for i in range(n_templates):
        for j in range(i + 1, n_templates):
            dist = max(abs(x[i + t] - x[j + t]) for t in range(m))
            if (dist <= r) if closed else (dist < r):
                b += 1
                dist = max(dist, abs(x[i + m] - x[j + m]))
                if (dist <= r) if closed else (dist < r):
                    a += 1
    return a, b


def sample_entropy(series, cfg: SampEnConfig = SampEnConfig()) -> float:
    """``-ln(A / B)``; ``math.inf`` when no length-(m+1) pair matches."""
    x = np.asarray(series, dtype=float)
    if x.size < cfg.emb_dim + 2:
        raise TooShort(f"need at least {cfg.emb_dim + 2} samples, got {x.size}")
    r = resolve_tolerance(x, cfg)
    a, b = match_counts(x, cfg.emb_dim, r, cfg.closed)
    if a == 0:
        return math.inf
    return -math.log(a / b)
