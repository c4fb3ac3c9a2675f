"""Static figures: network panels, time series, heatmaps, scatters."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .metrics import Regime  # noqa: E402

REGIME_COLORS = {
    Regime.SOLITARY: "red",
    Regime.INTERMEDIATE: "green",
    Regime.COHERENT: "blue",
    Regime.OUT_OF_RANGE: "darkorange",
    Regime.UNDEFINED: "gray",
}

_PNG_META = {"Software": None}


def _save(fig, path: Path) -> Path:
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)
    return path


def network_panels(traj, report, out_dir: Path, baseline: int = 2) -> list[Path]:
    """Phase portrait, Gamma profile, space-time raster, last instance, recurrence."""
    colors = [REGIME_COLORS[lab] for lab in report.labels]
    nodes = np.arange(1, traj.n_nodes + 1)
    paths = []

    fig, ax = plt.subplots(figsize=(4, 4))
    if traj.y is not None:
        order = [m for m in range(traj.n_nodes) if m != baseline - 1] + [baseline - 1]
        for m in order:
            c = "black" if m == baseline - 1 else colors[m]
            ax.plot(traj.x[m], traj.y[m], ",", color=c, alpha=0.5)
        ax.set_ylabel("y")
    else:
        for m in range(traj.n_nodes):
            ax.plot(traj.x[m, :-1], traj.x[m, 1:], ",", color=colors[m], alpha=0.5)
        ax.set_ylabel("x(n+1)")
    ax.set_xlabel("x")
    fig.tight_layout()
    paths.append(_save(fig, out_dir / "phase_portrait.png"))

    fig, ax = plt.subplots(figsize=(5, 3))
    ax.scatter(nodes, report.gamma_per_node, c=colors, s=10)
    ax.set_xlabel("m")
    ax.set_ylabel(r"$\Gamma_{2,m}$")
    ax.set_ylim(-1.05, 1.05)
    fig.tight_layout()
    paths.append(_save(fig, out_dir / "gamma.png"))

    fig, ax = plt.subplots(figsize=(6, 3))
    im = ax.imshow(traj.x, aspect="auto", origin="lower", interpolation="nearest", cmap="viridis",
                   extent=(0, traj.x.shape[1], 0.5, traj.n_nodes + 0.5))
    ax.set_xlabel("n (after transient)")
    ax.set_ylabel("m")
    fig.colorbar(im, ax=ax, label="x")
    fig.tight_layout()
    paths.append(_save(fig, out_dir / "spatiotemporal.png"))

    fig, ax = plt.subplots(figsize=(5, 3))
    ax.scatter(nodes, report.last_instance, c=colors, s=10)
    ax.set_xlabel("m")
    ax.set_ylabel(r"$x_m$")
    fig.tight_layout()
    paths.append(_save(fig, out_dir / "last_instance.png"))

    fig, ax = plt.subplots(figsize=(4, 4))
    im = ax.imshow(report.recurrence, origin="lower", cmap="jet", interpolation="nearest",
                   extent=(0.5, traj.n_nodes + 0.5, 0.5, traj.n_nodes + 0.5))
    ax.set_xlabel("m")
    ax.set_ylabel("m")
    fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    paths.append(_save(fig, out_dir / "recurrence.png"))
    return paths


def time_series(series, path: Path, ylabel: str = "x", title: str | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(6, 2.5))
    ax.plot(np.arange(len(series)), series, lw=0.5, color="k")
    ax.set_xlabel("n")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def phase_portrait(x, y, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(4, 4))
    ax.plot(x, y, ",", color="k")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    return _save(fig, path)


def heatmap(grid, axes, names, path: Path, label: str) -> Path:
    """2-D color plot; +inf cells are drawn at the colormap maximum."""
    g = np.array(grid, dtype=float)
    finite = g[np.isfinite(g)]
    if finite.size:
        g[np.isposinf(g)] = finite.max()
    fig, ax = plt.subplots(figsize=(4.5, 3.8))
    a1, a2 = axes
    mesh = ax.pcolormesh(a2, a1, np.ma.masked_invalid(g), shading="nearest", cmap="inferno")
    ax.set_xlabel(names[1])
    ax.set_ylabel(names[0])
    fig.colorbar(mesh, ax=ax, label=label)
    fig.tight_layout()
    return _save(fig, path)


def line(xs, ys, xname: str, path: Path, label: str) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.plot(xs, ys, "o-", ms=3)
    ax.set_xlabel(xname)
    ax.set_ylabel(label)
    fig.tight_layout()
    return _save(fig, path)


def scatter(xs, ys, xname: str, yname: str, path: Path, title: str | None = None) -> Path:
    fig, ax = plt.subplots(figsize=(4, 3.5))
    ax.scatter(xs, ys, s=8, color="tab:blue")
    ax.set_xlabel(xname)
    ax.set_ylabel(yname)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def bifurcation(values, last_instance, xname: str, path: Path) -> Path:
    """Last-instance x of every node against the scanned parameter."""
    fig, ax = plt.subplots(figsize=(6, 3.5))
    li = np.asarray(last_instance)
    xs = np.repeat(np.asarray(values), li.shape[-1])
    ax.plot(xs, li.reshape(-1), ",", color="k")
    ax.set_xlabel(xname)
    ax.set_ylabel(r"$x_m$ (last instance)")
    fig.tight_layout()
    return _save(fig, path)
