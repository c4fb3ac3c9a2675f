"""Parameter-grid sweeps and one-parameter bifurcation scans.

Every cell gets its own seed derived from (base seed, flat cell index,
sample index), so results do not depend on scheduling or worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .entropy import SampEnConfig, sample_entropy
from .errors import ConfigError, DegenerateSeries, DivergenceError, TooShort
from .metrics import classify, cross_correlation, gamma_average, spatial_average, sync_error
from .network import NetworkConfig, run

SWEEPABLE = ("sigma0", "mu0", "d_sigma", "d_mu", "p_sigma", "p_mu", "k")
METRICS = ("gamma_avg", "sync_error", "solitary_fraction", "sample_entropy")
THREADS_ENV = "RINGSTAR_THREADS"


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    count: int

    def validate(self, where: str = "axis") -> None:
        if self.name not in SWEEPABLE:
            raise ConfigError(f"{self.name!r} is not sweepable (choose from {SWEEPABLE})", f"{where}.name")
        if self.count < 2:
            raise ConfigError("need at least 2 points", f"{where}.count")
        if not self.lo < self.hi:
            raise ConfigError("lo must be < hi", f"{where}.lo")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class SweepSpec:
    axis1: SweepAxis
    axis2: SweepAxis | None = None
    base: NetworkConfig = field(default_factory=NetworkConfig)
    samples_per_cell: int = 1
    sampen: SampEnConfig = field(default_factory=SampEnConfig)

    def validate(self) -> None:
        self.axis1.validate("axis1")
        if self.axis2 is not None:
            self.axis2.validate("axis2")
            if self.axis2.name == self.axis1.name:
                raise ConfigError("both axes sweep the same parameter", "axis2.name")
        if self.samples_per_cell < 1:
            raise ConfigError("must be >= 1", "samples_per_cell")
        self.base.validate()

    @property
    def shape(self) -> tuple[int, ...]:
        if self.axis2 is None:
            return (self.axis1.count,)
        return (self.axis1.count, self.axis2.count)

    def cell_seed(self, flat_index: int, sample: int) -> int:
        ss = np.random.SeedSequence([self.base.seed, flat_index, sample])
        lo, hi = ss.generate_state(2, dtype=np.uint32)
        return int(hi) << 32 | int(lo)

    def cell_config(self, index: tuple[int, ...], sample: int = 0) -> NetworkConfig:
        overrides = {self.axis1.name: float(self.axis1.values[index[0]])}
        if self.axis2 is not None:
            overrides[self.axis2.name] = float(self.axis2.values[index[1]])
        flat = int(np.ravel_multi_index(index, self.shape))
        overrides["seed"] = self.cell_seed(flat, sample)
        return self.base.with_params(**overrides)


def evaluate(config: NetworkConfig, sampen: SampEnConfig = SampEnConfig(), baseline: int = 2) -> dict:
    """Run one configuration and reduce it to the sweep scalars."""
    try:
        traj = run(config)
    except DivergenceError as exc:
        return {"diverged": True, "message": str(exc)}
    try:
        gamma = cross_correlation(traj, baseline)
        g_avg = gamma_average(gamma, baseline)
        _, frac = classify(gamma, baseline)
    except DegenerateSeries:
        g_avg, frac = math.nan, math.nan
    try:
        se = sample_entropy(spatial_average(traj), sampen)
    except (DegenerateSeries, TooShort):
        se = math.nan
    return {
        "diverged": False,
        "gamma_avg": g_avg,
        "sync_error": sync_error(traj, baseline),
        "solitary_fraction": frac,
        "sample_entropy": se,
        "last_instance": traj.last_instance,
    }


def _evaluate_task(task):
    config, sampen = task
    return evaluate(config, sampen)


@dataclass
class SweepResult:
    spec: SweepSpec
    # metric name -> array of spec.shape (mean over non-diverged samples)
    grids: dict[str, np.ndarray]
    # spec.shape + (samples,)
    samples: dict[str, np.ndarray]
    diverged: np.ndarray
    sample_diverged: np.ndarray
    # spec.shape + (samples, N)
    last_instance: np.ndarray
    completed: np.ndarray
    complete: bool = True

    @property
    def axis_values(self) -> list[np.ndarray]:
        axes = [self.spec.axis1.values]
        if self.spec.axis2 is not None:
            axes.append(self.spec.axis2.values)
        return axes

    @property
    def n_diverged(self) -> int:
        return int(np.count_nonzero(self.diverged & self.completed))

    @property
    def n_valid(self) -> int:
        return int(np.count_nonzero(~self.diverged & self.completed))


def default_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_sweep(spec: SweepSpec, workers: int | None = None, *, allow_partial: bool = False,
              progress=None) -> SweepResult:
    """Evaluate every cell (and sample) of ``spec``.

    With ``allow_partial=True`` a KeyboardInterrupt stops the sweep and the
    cells finished so far are returned with ``complete=False``.
    """
    spec.validate()
    workers = default_workers() if workers is None else max(1, int(workers))
    shape = spec.shape
    n_samples = spec.samples_per_cell
    cells = list(np.ndindex(*shape))
    tasks = [(spec.cell_config(idx, s), spec.sampen) for idx in cells for s in range(n_samples)]

    samples = {name: np.full(shape + (n_samples,), np.nan) for name in METRICS}
    sample_div = np.zeros(shape + (n_samples,), dtype=bool)
    sample_done = np.zeros(shape + (n_samples,), dtype=bool)
    last = np.full(shape + (n_samples, spec.base.n_nodes), np.nan)

    def store(i, out):
        idx = cells[i // n_samples] + (i % n_samples,)
        sample_done[idx] = True
        if out["diverged"]:
            sample_div[idx] = True
            return
        for name in METRICS:
            samples[name][idx] = out[name]
        last[idx] = out["last_instance"]

    complete = True
    try:
        if workers == 1 or len(tasks) == 1:
            for i, out in enumerate(map(_evaluate_task, tasks)):
                store(i, out)
                if progress:
                    progress(i + 1, len(tasks))
        else:
            pool = ProcessPoolExecutor(max_workers=workers)
            try:
                chunk = max(1, len(tasks) // (8 * workers))
                for i, out in enumerate(pool.map(_evaluate_task, tasks, chunksize=chunk)):
                    store(i, out)
                    if progress:
                        progress(i + 1, len(tasks))
            except BaseException:
                pool.shutdown(wait=False, cancel_futures=True)
                raise
            pool.shutdown()
    except (KeyboardInterrupt, BrokenProcessPool):
        if not allow_partial:
            raise
        complete = False

    completed = sample_done.all(axis=-1)
    diverged = sample_div.all(axis=-1) & completed
    grids = {}
    for name, arr in samples.items():
        with np.errstate(invalid="ignore"):
            valid = ~np.isnan(arr)
            count = valid.sum(axis=-1)
            total = np.where(valid, arr, 0.0).sum(axis=-1)
            grid = np.where(count > 0, total / np.maximum(count, 1), np.nan)
        grid[~completed] = np.nan
        grids[name] = grid
    return SweepResult(
        spec=spec,
        grids=grids,
        samples=samples,
        diverged=diverged,
        sample_diverged=sample_div,
        last_instance=last,
        completed=completed,
        complete=complete,
    )


def scan_bifurcation(spec: SweepSpec, workers: int | None = None, **kwargs) -> SweepResult:
    """One-parameter scan; ``last_instance`` holds all N final x values per cell."""
    if spec.axis2 is not None:
        raise ConfigError("a bifurcation scan sweeps exactly one parameter", "axis2")
    return run_sweep(spec, workers, **kwargs)


PAIRS = {
    "E_vs_gamma": ("gamma_avg", "sync_error"),
    "SE_vs_E": ("sync_error", "sample_entropy"),
    "SE_vs_gamma": ("gamma_avg", "sample_entropy"),
}


def spearman(xs, ys) -> float | None:
    """Spearman rank correlation, or None when undefined (constant input, < 3 points)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) < 3 or np.all(xs == xs[0]) or np.all(ys == ys[0]):
        return None
    rho = stats.spearmanr(xs, ys).statistic
    return None if math.isnan(rho) else float(rho)


def correlate_measures(result: SweepResult) -> dict[str, dict]:
    """Measure-vs-measure scatter data over valid cells, with rank correlations.

    Keys are "E_vs_gamma", "SE_vs_E" and "SE_vs_gamma"; each entry holds the
    horizontal values ``x``, vertical values ``y`` and ``spearman`` (None if
    undefined).
    """
    ok = result.completed & ~result.diverged
    out = {}
    for key, (xname, yname) in PAIRS.items():
        xs = result.grids[xname][ok]
        ys = result.grids[yname][ok]
        keep = ~(np.isnan(xs) | np.isnan(ys))
        xs, ys = xs[keep], ys[keep]
        out[key] = {"x_name": xname, "y_name": yname, "x": xs, "y": ys, "spearman": spearman(xs, ys)}
    return out
