"""Write the density snapshots of the sigma = 2^-1/2, q0 = 0, p = 2 packet.

    python3 scripts/snapshots.py --out snapshots.csv

The CSV has columns tau,q,re,im,density and feeds ``plot_snapshots.py``.
"""

import argparse

import numpy as np

from freecs import analytic
from freecs.families import make_cs_family, z_from_initial
from freecs.fields import Grid, write_field_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="snapshots.csv")
    ap.add_argument("--taus", default="0,1,2", help="comma separated times")
    ap.add_argument("--grid", default="-8:8:1601")
    args = ap.parse_args()

    fam = make_cs_family(2**-0.5)
    label = z_from_initial(0.0, 2.0, fam)
    grid = Grid.parse(args.grid)
    taus = [float(t) for t in args.taus.split(",")]

    with open(args.out, "w") as fh:
        fh.write("tau,q,re,im,density\n")
        for tau in taus:
            f = analytic.cs_field(label, fam, tau, grid)
            write_field_csv(fh, grid.points, f.values, f.density, tau=tau)
            i = int(np.argmax(f.density))
            m = analytic.moments(tau, label, fam)
            print(f"tau={tau:g}: peak q={grid.points[i]:.3f} rho={f.density[i]:.5f} sigma_q={m.sigma_q:.6f}")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
