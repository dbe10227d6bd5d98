#!/usr/bin/env python3
"""Plot tracking, tracking error and commanded torque from run CSVs.

Usage:
    python scripts/plot_comparison.py out/nominal_smc_log.csv \
        out/nominal_nsmc_log.csv out/nominal_ncsmc_log.csv -o comparison.png

One column of panels per joint: reference vs actual position, tracking
error, commanded torque.  Developer convenience only; not part of the
library or its tests.
"""

import argparse
import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(c) for c in row] for row in reader]
    cols = {name: [row[i] for row in rows] for i, name in enumerate(header)}
    return cols


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("logs", nargs="+", help="run log CSV files")
    parser.add_argument("-o", "--output", default="comparison.png")
    args = parser.parse_args()

    fig, axes = plt.subplots(3, 2, figsize=(11, 8), sharex=True)
    for path in args.logs:
        cols = read_csv(path)
        label = Path(path).stem.replace("_log", "")
        t = cols["t"]
        for j in (1, 2):
            axes[0][j - 1].plot(t, cols[f"q{j}"], label=label, linewidth=0.8)
            axes[1][j - 1].plot(t, cols[f"e{j}"], label=label, linewidth=0.8)
            axes[2][j - 1].plot(t, cols[f"tau{j}"], label=label, linewidth=0.6)
    cols = read_csv(args.logs[0])
    for j in (1, 2):
        axes[0][j - 1].plot(cols["t"], cols[f"ref_q{j}"], "k--", linewidth=0.8,
                            label="reference")
        axes[0][j - 1].set_ylabel(f"q{j} (rad)")
        axes[1][j - 1].set_ylabel(f"e{j} (rad)")
        axes[2][j - 1].set_ylabel(f"tau{j} (N m)")
        axes[2][j - 1].set_xlabel("t (s)")
        axes[0][j - 1].set_title(f"joint {j}")
    for ax in axes.flat:
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
