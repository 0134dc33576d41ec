#!/usr/bin/env python3
"""Plot a converge CSV (median L2 error over seeds vs M, log-log).

    mla converge --fn f1 --N 31,61,127,251,509 --out f1.csv
    python3 docs/plot_convergence.py f1.csv f1.png
"""
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main(csv_path, png_path):
    df = pd.read_csv(csv_path)
    fig, ax = plt.subplots(figsize=(5, 4))
    for algo, group in df.groupby("algo"):
        med = group.groupby("M")["l2_error"].median()
        ax.loglog(med.index, med.values, "o-", label=algo)
    ax.set_xlabel("M = N R")
    ax.set_ylabel("L2 error (median over seeds)")
    ax.set_title(df["fn"].iloc[0])
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_path, dpi=150)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    main(sys.argv[1], sys.argv[2])
