"""Noise figure versus gain for an ideal and an eta = 0.95 detector.

    python scripts/run_noise_figure.py [--out-dir results]
"""

import argparse
from pathlib import Path

from cvclone import cli


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()
    out = Path(args.out_dir)
    for eta in ("1", "0.95"):
        cli.main(["nf", "--gain-min", "1", "--gain-max", "10", "--steps", "91", "--eta", eta,
                  "--out", str(out / f"nf_eta{eta}.csv")])


if __name__ == "__main__":
    main()
