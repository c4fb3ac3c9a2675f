"""Deterministic CSV / JSON writers and the run manifest."""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__


def fmt(v) -> str:
    """17 significant digits: enough to round-trip any double."""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def jsonable(v):
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return jsonable(v.tolist())
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    if isinstance(v, (np.floating, float)):
        v = float(v)
        if math.isfinite(v):
            return v
        return "nan" if math.isnan(v) else ("inf" if v > 0 else "-inf")
    return v


def write_json(path: Path, obj) -> Path:
    path.write_text(json.dumps(jsonable(obj), indent=2, sort_keys=False) + "\n")
    return path


def write_table(path: Path, header: list[str], rows) -> Path:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) if not isinstance(v, str) else v for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path


def write_columns(base: Path, columns: dict[str, np.ndarray], fmt_: str = "csv") -> Path:
    """Equal-length named columns as CSV (one row per index) or a JSON object."""
    names = list(columns)
    if fmt_ == "json":
        return write_json(base.with_suffix(".json"), {k: np.asarray(v) for k, v in columns.items()})
    rows = zip(*(np.asarray(columns[k]).tolist() for k in names))
    return write_table(base.with_suffix(".csv"), names, rows)


def write_matrix(base: Path, matrix: np.ndarray, fmt_: str = "csv") -> Path:
    if fmt_ == "json":
        return write_json(base.with_suffix(".json"), np.asarray(matrix))
    path = base.with_suffix(".csv")
    path.write_text("\n".join(",".join(fmt(v) for v in row) for row in np.asarray(matrix).tolist()) + "\n")
    return path


def write_grid(base: Path, grid: np.ndarray, axes: list[np.ndarray], names: list[str],
               fmt_: str = "csv") -> Path:
    """Metric grid with axis values in the first row / column.

    For 2-D grids the corner cell reads ``axis1\\axis2``; row i is axis1[i],
    column j is axis2[j]. A 1-D grid is written as two columns.
    """
    grid = np.asarray(grid, dtype=float)
    if fmt_ == "json":
        return write_json(base.with_suffix(".json"),
                          {"axes": {n: a for n, a in zip(names, axes)}, "values": grid})
    if grid.ndim == 1:
        return write_table(base.with_suffix(".csv"), [names[0], base.stem],
                           zip(axes[0].tolist(), grid.tolist()))
    header = [f"{names[0]}\\{names[1]}"] + [fmt(v) for v in axes[1]]
    rows = ([a] + row for a, row in zip(axes[0].tolist(), grid.tolist()))
    return write_table(base.with_suffix(".csv"), header, rows)


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int
    artifacts: list[str] = field(default_factory=list)
    tool_version: str = __version__
    duration_s: float = 0.0
    complete: bool = True
    status: str = "ok"

    def add(self, out_dir: Path, *paths: Path) -> None:
        for p in paths:
            rel = str(Path(p).relative_to(out_dir))
            if rel not in self.artifacts:
                self.artifacts.append(rel)

    def write(self, out_dir: Path) -> Path:
        return write_json(out_dir / "manifest.json", asdict(self))


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        return False
