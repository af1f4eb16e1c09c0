"""Plot the density snapshots written by ``snapshots.py`` (or ``freecs field``).

    python3 scripts/plot_snapshots.py snapshots.csv --out snapshots.png
"""

import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("--out", default="snapshots.png")
    args = ap.parse_args()

    data = np.genfromtxt(args.csv, delimiter=",", names=True)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    for tau in np.unique(data["tau"]):
        sel = data[data["tau"] == tau]
        ax.plot(sel["q"], sel["density"], label=rf"$\tau={tau:g}$")
    ax.set_xlabel("q")
    ax.set_ylabel(r"$|\psi(q,\tau)|^2$")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
