#!/usr/bin/env python3
"""Contour plot of a `gmec scan` CSV.

Usage: plot_scan.py scan.csv [out.png]

Greyscale shows the certified lower bound over the (c1, c2) simplex; the
hatched overlay marks states that are PPT for every bipartition.
"""
import csv
import sys

import matplotlib.pyplot as plt
import matplotlib.tri as mtri


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__)
        return 2
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else "scan.png"

    c1, c2, bound, ppt = [], [], [], []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            c1.append(float(row["c1"]))
            c2.append(float(row["c2"]))
            bound.append(float(row["bound"]))
            ppt.append(int(row["ppt_all"]))

    tri = mtri.Triangulation(c1, c2)
    fig, ax = plt.subplots(figsize=(6, 5))
    filled = ax.tricontourf(tri, bound, levels=20, cmap="Greys_r")
    fig.colorbar(filled, ax=ax, label="lower bound on the gme-concurrence")
    ax.tricontour(tri, ppt, levels=[0.5], colors="tab:blue")
    ax.set_xlabel("$c_1$ (GHZ weight)")
    ax.set_ylabel("$c_2$ (W weight)")
    ax.set_title("Certified entanglement over the GHZ/W/noise simplex")
    fig.tight_layout()
    fig.savefig(out, dpi=200)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
