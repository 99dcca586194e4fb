#!/usr/bin/env python3
"""Plot a febem-study CSV report: errors vs 1/h on log-log axes.

Usage: python3 docs/plot_study.py k1.csv [out.png]
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

COLUMNS = ["err_h1", "err_l2", "err_strip", "err_flux"]
LABELS = {
    "err_h1": r"$\|\nabla(u-u_h)\|_{L^2(\Omega)}$",
    "err_l2": r"$\|u-u_h\|_{L^2(\Omega)}$",
    "err_strip": r"$\|u-u_h\|_{L^2(S_h)}$",
    "err_flux": r"$\|h^{1/2}(\varphi-\varphi_h)\|_{L^2(\Gamma)}$",
}


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__)
        return 1
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else path.rsplit(".", 1)[0] + ".png"

    rows = []
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            if row["level"].startswith("#") or row["level"] == "levels":
                break
            rows.append(row)

    inv_h = [1.0 / float(r["h"]) for r in rows]
    fig, ax = plt.subplots(figsize=(7, 5))
    for col in COLUMNS:
        ax.loglog(inv_h, [float(r[col]) for r in rows], "o-", label=LABELS[col])
    ax.set_xlabel(r"$1/h$")
    ax.set_ylabel("error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
