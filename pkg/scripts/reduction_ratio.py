#!/usr/bin/env python3
"""How tight is the slicewise reduction inequality?

For sources with x-independent slices f(u,v) = g(v) * 1_[-L,L](u) the
inequality

    ||(T+ f)_y||_{L^p(dx)} <= B(1/2, gamma/2) * H(v -> ||f_v||_p)(y)

should approach equality as L grows (the convolution bound saturates up
to the window truncation).  This script reports the ratio of the two
sides for increasing L; it is an exploratory sweep, not an assertion.

Usage:
    python scripts/reduction_ratio.py --gamma 1 --p 2 --y 1.0
"""

import argparse

from oplab.bergman import reduction_bound_check
from oplab.funcdsl import func2d
from oplab.hilbert import OperatorParams


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=0.0)
    ap.add_argument("--beta", type=float, default=0.0)
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--p", type=float, default=2.0)
    ap.add_argument("--y", type=float, default=1.0)
    ap.add_argument("--L", type=float, nargs="*", default=[0.25, 1.0, 4.0, 16.0])
    args = ap.parse_args()

    params = OperatorParams(args.alpha, args.beta, args.gamma)
    print(f"{'L':>8}  {'lhs':>14}  {'rhs':>14}  {'lhs/rhs':>10}")
    for L in args.L:
        f = func2d(f"ind(-{L},{L})*ind(y,1,2)")
        row = reduction_bound_check(params, f, y_grid=(args.y,), tol=1e-5, p=args.p)[0]
        print(f"{L:>8.3g}  {row['lhs']:>14.8f}  {row['rhs']:>14.8f}  "
              f"{row['lhs'] / row['rhs']:>10.6f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
