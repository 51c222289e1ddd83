#!/usr/bin/env python3
"""Plot mean FCT against load, one line per scheduler, from a rifo-sim sweep CSV."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--output", default="fct.png")
    ap.add_argument("--classes", nargs="+", default=None, help="flow classes to plot (default: all present)")
    args = ap.parse_args()

    df = pd.read_csv(args.csv).dropna(subset=["mean_fct_ns"])
    classes = args.classes or list(dict.fromkeys(df["class"]))
    fig, axes = plt.subplots(1, len(classes), figsize=(4.5 * len(classes), 3.6), squeeze=False)
    for ax, cls in zip(axes[0], classes):
        sub = df[df["class"] == cls]
        agg = sub.groupby(["scheduler", "load"])["mean_fct_ns"].agg(["mean", "std"]).reset_index()
        for name, g in agg.groupby("scheduler"):
            ax.errorbar(g["load"], g["mean"] / 1e3, yerr=g["std"].fillna(0) / 1e3, marker="o", capsize=3, label=name)
        ax.set_title(f"{cls} flows")
        ax.set_xlabel("load")
        ax.set_ylabel("mean FCT (us)")
        ax.set_yscale("log")
        ax.grid(alpha=0.3)
    axes[0][0].legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()
