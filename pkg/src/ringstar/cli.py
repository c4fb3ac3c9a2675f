"""Command-line entry point: ``ringstar simulate | sweep | single-neuron``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import config as cfgio
from . import plotting
from .entropy import sample_entropy
from .errors import ConfigError, DegenerateSeries, DivergenceError, TooShort
from .metrics import compute_report, spatial_average
from .network import run
from .neuron import max_lyapunov, trajectory
from .output import RunManifest, Timer, write_columns, write_grid, write_json, write_matrix, write_table
from .sweep import METRICS, correlate_measures, run_sweep

log = logging.getLogger("ringstar")

EXIT_OK = 0
EXIT_CONFIG = 3
EXIT_DIVERGENCE = 4
EXIT_INTERRUPTED = 130

METRIC_LABELS = {
    "gamma_avg": r"$\Gamma$",
    "sync_error": "E",
    "solitary_fraction": r"$N_s/N$",
    "sample_entropy": "SE",
}


def _safe_sampen(series, cfg):
    try:
        return sample_entropy(series, cfg)
    except (DegenerateSeries, TooShort) as exc:
        log.warning("sample entropy undefined: %s", exc)
        return float("nan")


def simulate(config, out_dir: Path, *, emit_trajectory: bool = False, fmt: str = "csv",
             plots: bool = True, sampen=None) -> RunManifest:
    """Single network run: metrics, series, recurrence matrix and the five panels."""
    from .entropy import SampEnConfig

    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest("simulate", cfgio.network_to_dict(config), config.seed)
    with Timer() as t:
        traj = run(config, record_y=True, record_phi=emit_trajectory)
        report = compute_report(traj)
        xbar = spatial_average(traj)
        report.sample_entropy = _safe_sampen(xbar, sampen or SampEnConfig())

        cfgio.save(config, "simulate", out_dir / "config.yaml")
        files = [out_dir / "config.yaml"]
        files.append(write_json(out_dir / "metrics.json", report.to_dict()))
        nodes = np.arange(1, config.n_nodes + 1)
        files.append(write_columns(out_dir / "spatial_average",
                                   {"n": np.arange(config.n_transient + 1, config.n_total + 1), "x_mean": xbar}, fmt))
        files.append(write_columns(out_dir / "last_instance", {"node": nodes, "x": report.last_instance}, fmt))
        if fmt == "json":
            files.append(write_json(out_dir / "gamma.json", {
                "node": nodes, "gamma": report.gamma_per_node, "label": [lab.value for lab in report.labels]}))
        else:
            files.append(write_table(out_dir / "gamma.csv", ["node", "gamma", "label"],
                                     zip(nodes.tolist(), report.gamma_per_node.tolist(),
                                         [lab.value for lab in report.labels])))
        files.append(write_matrix(out_dir / "recurrence", report.recurrence, fmt))
        if emit_trajectory:
            for name, hist in (("x", traj.x), ("y", traj.y), ("phi", traj.phi)):
                cols = {"n": np.arange(config.n_transient + 1, config.n_total + 1)}
                cols.update({f"{name}_{m}": hist[m - 1] for m in nodes})
                files.append(write_columns(out_dir / f"trajectory_{name}", cols, fmt))
        if plots:
            files += plotting.network_panels(traj, report, out_dir)
            files.append(plotting.time_series(
                xbar, out_dir / "spatial_average.png", r"$\bar{x}$",
                f"SE = {report.sample_entropy:.3f}"))
    manifest.add(out_dir, *files)
    manifest.duration_s = t.elapsed
    manifest.write(out_dir)
    return manifest


def single_neuron(cfg, out_dir: Path, *, fmt: str = "csv", plots: bool = True) -> RunManifest:
    """Single map: orbit after the transient, its SE, and the Lyapunov spectrum."""
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest("single-neuron", cfgio.single_to_dict(cfg), cfg.seed)
    with Timer() as t:
        orbit = trajectory(cfg.initial, cfg.neuron, cfg.n_transient + cfg.n_sample)
        window = orbit[cfg.n_transient + 1:]
        spectrum = max_lyapunov(cfg.initial, cfg.neuron, cfg.n_transient, cfg.n_sample, full=True)
        se = _safe_sampen(window[:, 0], cfg.sampen)
        report = {
            "sample_entropy": se,
            "lambda_max": float(spectrum[0]),
            "lyapunov_spectrum": spectrum,
            "n_transient": cfg.n_transient,
            "n_sample": cfg.n_sample,
        }
        cfgio.save(cfg, "single-neuron", out_dir / "config.yaml")
        files = [out_dir / "config.yaml", write_json(out_dir / "report.json", report)]
        n = np.arange(cfg.n_transient + 1, cfg.n_transient + cfg.n_sample + 1)
        files.append(write_columns(out_dir / "trajectory",
                                   {"n": n, "x": window[:, 0], "y": window[:, 1], "phi": window[:, 2]}, fmt))
        if plots:
            files.append(plotting.phase_portrait(window[:, 0], window[:, 1], out_dir / "phase_portrait.png"))
            files.append(plotting.time_series(window[:, 0], out_dir / "time_series.png", "x",
                                              f"SE = {se:.3f}"))
    manifest.add(out_dir, *files)
    manifest.duration_s = t.elapsed
    manifest.write(out_dir)
    return manifest


def sweep(spec, out_dir: Path, *, workers: int | None = None, fmt: str = "csv",
          plots: bool = True) -> RunManifest:
    """Grid sweep / bifurcation scan with per-metric grids and measure scatters."""
    out_dir.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest("sweep", cfgio.sweep_to_dict(spec), spec.base.seed)
    with Timer() as t:
        result = run_sweep(spec, workers, allow_partial=True)
        cfgio.save(spec, "sweep", out_dir / "config.yaml")
        files = [out_dir / "config.yaml"]
        axes = result.axis_values
        names = [spec.axis1.name] + ([spec.axis2.name] if spec.axis2 else [])
        for metric in METRICS:
            files.append(write_grid(out_dir / metric, result.grids[metric], axes, names, fmt))
        files.append(write_grid(out_dir / "diverged", result.diverged.astype(float), axes, names, fmt))

        corr = correlate_measures(result)
        summary = {}
        for key, pair in corr.items():
            files.append(write_columns(out_dir / f"scatter_{key}",
                                       {pair["x_name"]: pair["x"], pair["y_name"]: pair["y"]}, fmt))
            summary[key] = pair["spearman"]
        files.append(write_json(out_dir / "summary.json", {
            "spearman": summary,
            "cells": int(np.prod(spec.shape)),
            "valid": result.n_valid,
            "diverged": result.n_diverged,
            "complete": result.complete,
        }))

        if spec.axis2 is None:
            vals = spec.axis1.values
            li = result.last_instance[:, 0, :]
            rows = [(v, m + 1, li[i, m]) for i, v in enumerate(vals.tolist()) for m in range(li.shape[1])]
            if fmt == "json":
                files.append(write_json(out_dir / "bifurcation.json",
                                        {spec.axis1.name: vals, "last_instance": li}))
            else:
                files.append(write_table(out_dir / "bifurcation.csv", [spec.axis1.name, "node", "x_last"], rows))

        if plots:
            for metric in METRICS:
                if spec.axis2 is None:
                    files.append(plotting.line(axes[0], result.grids[metric], names[0],
                                               out_dir / f"{metric}.png", METRIC_LABELS[metric]))
                else:
                    files.append(plotting.heatmap(result.grids[metric], axes, names,
                                                  out_dir / f"{metric}.png", METRIC_LABELS[metric]))
            for key, pair in corr.items():
                rho = pair["spearman"]
                files.append(plotting.scatter(
                    pair["x"], pair["y"], METRIC_LABELS[pair["x_name"]], METRIC_LABELS[pair["y_name"]],
                    out_dir / f"scatter_{key}.png",
                    f"Spearman = {rho:.3f}" if rho is not None else "Spearman undefined"))
            if spec.axis2 is None:
                files.append(plotting.bifurcation(spec.axis1.values, result.last_instance[:, 0, :],
                                                  names[0], out_dir / "bifurcation.png"))
    manifest.add(out_dir, *files)
    manifest.duration_s = t.elapsed
    manifest.complete = result.complete
    if not result.complete:
        manifest.status = "interrupted"
    manifest.write(out_dir)
    return manifest


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringstar", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="YAML config path or bundled preset name")
        p.add_argument("--out", required=True, type=Path, help="output directory")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
        p.add_argument("--no-plots", action="store_true", help="skip PNG output")
        p.add_argument("--threads", type=int, help="worker processes (default: $RINGSTAR_THREADS or CPU count)")

    p = sub.add_parser("simulate", help="one network run with metrics and figures")
    common(p)
    p.add_argument("--emit-trajectory", action="store_true", help="also write full x/y/phi histories")
    common(sub.add_parser("sweep", help="parameter grid or bifurcation scan"))
    common(sub.add_parser("single-neuron", help="single map: SE and Lyapunov exponents"))

    sub.add_parser("presets", help="list bundled presets")
    p = sub.add_parser("schema", help="print the JSON schema of a config kind")
    p.add_argument("kind", choices=sorted(cfgio.SCHEMAS))
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "presets":
        for name in cfgio.preset_names():
            print(name)
        return EXIT_OK
    if args.command == "schema":
        print(json.dumps(cfgio.SCHEMAS[args.kind], indent=2))
        return EXIT_OK
    try:
        if args.command == "simulate":
            cfg = cfgio.load(args.config, "simulate")
            if args.seed is not None:
                cfg = replace(cfg, seed=args.seed)
            manifest = simulate(cfg, args.out, emit_trajectory=args.emit_trajectory, fmt=args.fmt,
                                plots=not args.no_plots)
        elif args.command == "sweep":
            spec = cfgio.load(args.config, "sweep")
            if args.seed is not None:
                spec = replace(spec, base=replace(spec.base, seed=args.seed))
            manifest = sweep(spec, args.out, workers=args.threads, fmt=args.fmt, plots=not args.no_plots)
            if not manifest.complete:
                print(f"interrupted; partial results in {args.out}", file=sys.stderr)
                return EXIT_INTERRUPTED
        else:
            cfg = cfgio.load(args.config, "single-neuron")
            if args.seed is not None:
                cfg = replace(cfg, seed=args.seed)
            manifest = single_neuron(cfg, args.out, fmt=args.fmt, plots=not args.no_plots)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DivergenceError as exc:
        print(f"divergence: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE
    print(f"wrote {len(manifest.artifacts)} files to {args.out} in {manifest.duration_s:.1f} s")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
