#!/usr/bin/env python3
"""Companion plotting script: renders trajectory and sweep CSVs to PNG.

The package's contract ends at CSV/JSON; this script is a convenience for
eyeballing results and is not exercised by the test suite.

Usage:
    python3 scripts/plot_results.py trajectory FILE.csv [...more]
    python3 scripts/plot_results.py sweep FILE.csv
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def plot_trajectories(paths):
    fig, (ax_u, ax_e) = plt.subplots(1, 2, figsize=(11, 4))
    for path in paths:
        data = np.genfromtxt(path, delimiter=",", names=True)
        label = Path(path).stem
        ax_u.plot(data["t"], data["u"], marker=".", ms=3, label=label)
        ax_e.semilogy(data["t"], np.maximum(data["energy"], 1e-300), label=label)
    for ax, title in ((ax_u, "solution"), (ax_e, "energy")):
        ax.set_xlabel("t")
        ax.set_title(title)
        ax.legend(fontsize=7)
    ax_u.axhline(1.0, color="gray", lw=0.5)
    ax_u.axhline(-1.0, color="gray", lw=0.5)
    out = Path(paths[0]).with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_sweep(path):
    rows = np.genfromtxt(path, delimiter=",", names=True, dtype=None, encoding=None)
    u0s = np.unique(rows["u0"])
    hs = np.unique(rows["h"])
    classes = sorted(set(rows["class"]))
    index = {c: i for i, c in enumerate(classes)}
    grid = np.zeros((len(hs), len(u0s)))
    for row in rows:
        i = np.searchsorted(hs, row["h"])
        j = np.searchsorted(u0s, row["u0"])
        grid[i, j] = index[row["class"]]
    fig, ax = plt.subplots(figsize=(7, 5))
    mesh = ax.pcolormesh(u0s, hs, grid, cmap="viridis", shading="nearest")
    ax.set_yscale("log")
    ax.set_xlabel("u0")
    ax.set_ylabel("h")
    cbar = fig.colorbar(mesh, ticks=range(len(classes)))
    cbar.ax.set_yticklabels(classes)
    out = Path(path).with_suffix(".png")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


if __name__ == "__main__":
    if len(sys.argv) < 3 or sys.argv[1] not in ("trajectory", "sweep"):
        sys.exit(__doc__)
    if sys.argv[1] == "trajectory":
        plot_trajectories(sys.argv[2:])
    else:
        plot_sweep(sys.argv[2])
