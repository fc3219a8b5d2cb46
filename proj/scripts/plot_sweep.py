#!/usr/bin/env python3
"""Plot a sweep.csv produced by `camfolio sweep`.

Usage: plot_sweep.py out/dance1-sweep-psi/sweep.csv [plot.png]
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__.strip(), file=sys.stderr)
        return 2
    csv_path = sys.argv[1]
    out_path = sys.argv[2] if len(sys.argv) > 2 else csv_path.replace(".csv", ".png")

    df = pd.read_csv(csv_path)
    axis = df["axis"].iloc[0]

    fig, (ax_mean, ax_sd) = plt.subplots(1, 2, figsize=(10, 4), sharex=True)
    for strategy, g in df.groupby("strategy"):
        g = g.sort_values("axis_value")
        ax_mean.plot(g["axis_value"], g["mean"], marker="o", label=strategy)
        ax_sd.plot(g["axis_value"], g["sd"], marker="o", label=strategy)

    ax_mean.set_xlabel(axis)
    ax_mean.set_ylabel("mean delivered quality")
    ax_sd.set_xlabel(axis)
    ax_sd.set_ylabel("sd of delivered quality")
    ax_mean.legend()
    ax_sd.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
