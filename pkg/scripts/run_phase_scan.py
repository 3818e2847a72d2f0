"""Joint-quadrature noise versus common homodyne phase at G = 1.8, T = 0.56.

    python scripts/run_phase_scan.py [--out-dir results]
"""

import argparse
from pathlib import Path

from cvclone import cli

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()
    cli.main(["phase-scan", "--config", str(ROOT / "configs" / "calibrated.cfg"),
              "--gain", "1.8", "--transmission", "0.56", "--points", "361",
              "--out", str(Path(args.out_dir) / "phase_scan.csv")])


if __name__ == "__main__":
    main()
