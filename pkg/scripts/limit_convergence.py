#!/usr/bin/env python3
"""Watch the two-wall potential collapse onto the single-wall law.

At a fixed distance z from one wall, push the other wall out through a
geometric ladder of separations and tabulate the relative deviation of the
exact potential from the classic single-wall expression -3(alpha-beta)/(8 pi z^4)
(conducting) or its positive permeable-wall counterpart. The deviation falls
like (z/a)^4; the fitted exponent printed at the end should sit at 4.

Usage:
    python scripts/limit_convergence.py [--z 1.0] [--rungs 8] [--alpha 1] [--beta 0]
"""

import argparse

from cpwalls import AtomResponse, limit_convergence_study


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=float, default=1.0,
                    help="fixed distance from the near wall")
    ap.add_argument("--rungs", type=int, default=8,
                    help="number of doublings of the separation, from 10*z")
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--beta", type=float, default=0.0)
    args = ap.parse_args()

    atom = AtomResponse(args.alpha, args.beta)
    a_values = [10.0 * args.z * 2.0 ** k for k in range(args.rungs)]

    for wall_type in ("conducting", "permeable"):
        study = limit_convergence_study(atom, wall_type, args.z, a_values)
        print(f"\n=== {wall_type} wall, z = {args.z}, "
              f"alpha = {args.alpha}, beta = {args.beta} ===")
        print(f"{'a':>12} {'V_exact':>24} {'V_limit':>24} {'rel_error':>14}")
        for row in study.rows:
            rel = "degenerate" if row.rel_error is None else f"{row.rel_error:.6e}"
            print(f"{row.a:>12.1f} {row.v_exact:>24.16e} "
                  f"{row.v_limit:>24.16e} {rel:>14}")
        if study.degenerate:
            print("alpha == beta: the potential is flat, no limit to approach")
        else:
            print(f"fitted convergence exponent: "
                  f"{study.convergence_exponent():.4f} (expected 4)")


if __name__ == "__main__":
    main()
