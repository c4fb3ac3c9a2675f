"""Single-neuron study plus the six five-panel network runs, one output folder each."""

from __future__ import annotations

import argparse
from pathlib import Path

from ringstar import cli
from ringstar import config as cfgio

NETWORK_PRESETS = ("fig3a", "fig3b", "fig3c", "fig4a", "fig4b", "fig4c")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("results/panels"))
    parser.add_argument("--no-plots", action="store_true")
    args = parser.parse_args()

    cli.single_neuron(cfgio.load("fig2_single_neuron", "single-neuron"), args.out / "single_neuron",
                      plots=not args.no_plots)
    for name in NETWORK_PRESETS:
        cfg = cfgio.load(name, "simulate")
        cli.simulate(cfg, args.out / name, plots=not args.no_plots)
        metrics = (args.out / name / "metrics.json").read_text()
        print(name, metrics.split('"counts"')[0].replace("\n", " "))


if __name__ == "__main__":
    main()
