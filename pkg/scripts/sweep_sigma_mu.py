"""(sigma0, mu0) sweep with rank correlations between the three measures.

Defaults to the reduced 10 x 10 grid; pass --preset fig6_sigma0_mu0 for 40 x 40.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from ringstar import cli
from ringstar import config as cfgio


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--preset", default="fig6_reduced_10x10")
    parser.add_argument("--out", type=Path, default=Path("results/sweep"))
    parser.add_argument("--workers", type=int)
    parser.add_argument("--samples", type=int, default=1, help="realizations averaged per cell")
    args = parser.parse_args()

    spec = cfgio.load(args.preset, "sweep")
    if args.samples != 1:
        from dataclasses import replace
        spec = replace(spec, samples_per_cell=args.samples)
    manifest = cli.sweep(spec, args.out, workers=args.workers)
    print((args.out / "summary.json").read_text())
    print(f"{len(manifest.artifacts)} files in {manifest.duration_s:.0f} s")


if __name__ == "__main__":
    main()
