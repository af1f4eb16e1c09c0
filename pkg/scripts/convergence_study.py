"""Finite-difference residual of the coherent state versus dt and dq.

Prints the error tables and fitted orders (expected 2 in dt, 4 in dq).
"""

import argparse

from freecs import analytic, oracle
from freecs.families import make_cs_family, z_from_initial


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sigma-q", type=float, default=2**-0.5)
    ap.add_argument("--q0", type=float, default=0.0)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--tau", type=float, default=0.5)
    ap.add_argument("--levels", type=int, default=5)
    args = ap.parse_args()

    fam = make_cs_family(args.sigma_q)
    label = z_from_initial(args.q0, args.p, fam)
    psi = lambda q, t: analytic.eval_cs(q, t, label, fam)  # noqa: E731
    dt_slope, h_slope, dt_err, h_err = oracle.residual_orders(psi, args.tau, levels=args.levels)

    print("dt halving (fine dq):")
    for k, e in enumerate(dt_err):
        print(f"  dt = 0.05/2^{k}: max |residual| = {e:.3e}")
    print(f"  fitted order {dt_slope:.3f}")
    print("dq halving (fine dt):")
    for k, e in enumerate(h_err):
        print(f"  n = {256 * 2**k:5d}: max |residual| = {e:.3e}")
    print(f"  fitted order {h_slope:.3f}")


if __name__ == "__main__":
    main()
