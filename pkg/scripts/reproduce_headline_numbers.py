#!/usr/bin/env python3
"""Run every subcommand with the shipped configs and collect the headline
numbers (total phase ~16.9 rad, sensitivity 666.7 rad/sqrt(Hz) and
2.1 mrad/sqrt(Hz), readout lag 2.146 rad, Stark figures, echo residuals)
plus their CSVs under out/.

Usage: python scripts/reproduce_headline_numbers.py [OUTDIR]
"""

import sys
from pathlib import Path

from ac_diamond.cli import main

REPO = Path(__file__).resolve().parent.parent
DEFAULT = str(REPO / "configs" / "default.cfg")
PHI10 = str(REPO / "configs" / "phi10.cfg")


def run(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = [
        ("total rectified phase (reference parameters, n = f*T2)",
         ["phase", "--config", DEFAULT, "--out", str(outdir / "phase.csv")]),
        ("sensitivity (C = 0.05, T2 = 1.8 ms, N = 1e11)",
         ["sensitivity", "--config", DEFAULT, "--out", str(outdir / "sensitivity.csv")]),
        ("fluorescence curve (max phase 10 rad, auto lag)",
         ["sweep", "--config", PHI10, "--out", str(outdir / "sweep.csv")]),
        ("holonomy diagnostics (planar convergence, path dependence)",
         ["holonomy", "--config", PHI10, "--steps", "100000",
          "--out", str(outdir / "holonomy.csv")]),
        ("ground-state Stark shift and adiabaticity",
         ["stark", "--config", DEFAULT, "--out", str(outdir / "stark.csv")]),
        ("echo cancellation residuals vs detuning",
         ["echo-check", "--config", PHI10, "--out", str(outdir / "echo_check.csv")]),
        ("Monte Carlo phase estimates (shot ladder)",
         ["montecarlo", "--config", PHI10, "--out", str(outdir / "montecarlo.csv")]),
    ]
    for title, argv in jobs:
        print(f"\n=== {title} ===")
        code = main(argv)
        if code != 0:
            print(f"subcommand failed with exit code {code}", file=sys.stderr)
            return code
    print(f"\nCSV outputs written to {outdir}/")
    print("plot the sweep with: gnuplot -c scripts/plot_sweep.gp out/sweep.csv")
    return 0


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else REPO / "out"
    sys.exit(run(target))
