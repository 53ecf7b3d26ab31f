#!/usr/bin/env python3
"""Sweep the extremal Rayleigh quotient toward the sharp norm.

The truncated-power pair f = x^(-(a+1+xi)/p), g = x^(-(a+1+xi)/p') on
[1, inf) has quotient <g, Hf>/(||f|| ||g||) approaching the closed-form
operator norm from below as xi -> 0; this script prints the approach
together with the proof's correction bound.

Usage:
    python scripts/extremal_sweep.py --p 2 --a 0 --alpha 0 --beta 0
"""

import argparse

from oplab.hilbert import (
    OperatorParams,
    WeightedSpaceSpec,
    conjugate_exponent,
    extremal_quotient,
    sharp_norm,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--a", type=float, default=0.0)
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--beta", type=float, default=0.0)
    ap.add_argument("--xi", type=float, nargs="*",
                    default=[0.5, 0.2, 0.1, 0.05, 0.02, 0.01, 0.005, 0.001])
    args = ap.parse_args()

    params = OperatorParams(args.alpha, args.beta, args.alpha + args.beta + 1.0)
    space = WeightedSpaceSpec(args.p, args.a)
    sharp = sharp_norm(space, params)
    pp = conjugate_exponent(args.p)
    print(f"# sharp norm = {sharp:.12f}  (gamma = alpha+beta+1 = {params.gamma})")
    print(f"{'xi':>10}  {'quotient':>16}  {'gap to sharp':>14}  {'corr bound * xi':>16}")
    for xi in args.xi:
        quotient = extremal_quotient(space, params, xi)
        corr = 1.0 / ((args.beta + (args.a + 1 + xi) / pp - args.a)
                      * (args.beta + 1 - (args.a + 1 + xi) / args.p))
        print(f"{xi:>10.4g}  {quotient:>16.12f}  {sharp - quotient:>14.3e}  {xi * corr:>16.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
