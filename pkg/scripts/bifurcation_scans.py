"""One-parameter scans of the last-instance x values (sigma0, mu0, P_sigma, P_mu, k)."""

from __future__ import annotations

import argparse
from dataclasses import replace
from pathlib import Path

from ringstar import cli
from ringstar import config as cfgio

SCANS = ("fig13a_sigma0", "fig13b_mu0", "fig13c_psigma", "fig13d_pmu", "fig13e_k")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results/bifurcation"))
    parser.add_argument("--count", type=int, help="override the number of scan points")
    parser.add_argument("--workers", type=int)
    args = parser.parse_args()

    for name in SCANS:
        spec = cfgio.load(name, "sweep")
        if args.count:
            spec = replace(spec, axis1=replace(spec.axis1, count=args.count))
        manifest = cli.sweep(spec, args.out / name, workers=args.workers)
        print(f"{name}: {len(manifest.artifacts)} files, {manifest.duration_s:.0f} s")


if __name__ == "__main__":
    main()
