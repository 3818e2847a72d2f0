"""Inseparability and EPR products versus gain, pure-lossless and calibrated, plus both crossings.

    python scripts/run_clone_sweep.py [--out-dir results]
"""

import argparse
from pathlib import Path

from cvclone import cli

ROOT = Path(__file__).resolve().parents[1]
CALIBRATED = str(ROOT / "configs" / "calibrated.cfg")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()
    out = Path(args.out_dir)
    sweep = ["clone-sweep", "--gain-min", "1", "--gain-max", "5", "--steps", "81"]
    cli.main(sweep + ["--out", str(out / "clone_sweep_pure.csv")])
    cli.main(sweep + ["--config", CALIBRATED, "--out", str(out / "clone_sweep_calibrated.csv")])
    for metric in ("insep", "epr12"):
        cli.main(["find-crossing", "--config", CALIBRATED, "--metric", metric])


if __name__ == "__main__":
    main()
