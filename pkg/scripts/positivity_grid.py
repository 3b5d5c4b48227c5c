"""Smallest eigenvalue of each lambda-form component block over a lambda grid.

Above n-1 every block is positive definite; at and below it poles (fk_constant = 0)
and indefinite blocks (marked !) appear on the components with k_n >= 1.
"""
import argparse

import numpy as np

from qwave.coeffs import PoleAtPoint, eval_numeric
from qwave.forms import gram
from qwave.symfunc import fk_constant
from qwave.uqaction import decompose_degree


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=3)
    ap.add_argument("--q", type=float, default=0.5)
    ap.add_argument("--lambda", dest="lams", type=float, action="append")
    args = ap.parse_args()
    n = args.n
    lams = args.lams or list(np.arange(-0.5, n + 1.01, 0.25))
    comps = [(k, basis) for d in range(args.max_degree + 1) for k, basis in decompose_degree(n, d)]
    fock_blocks = {k: gram(basis).numeric(args.q) for k, basis in comps}
    print("lambda  " + "  ".join(f"{str(tuple(k)):>10s}" for k, _ in comps))
    for lam in lams:
        cells = []
        for k, _ in comps:
            c = fk_constant(k, int(lam) if float(lam).is_integer() else "sym", n)
            try:
                cval = None if c.is_zero() else eval_numeric(c, args.q, lam)
            except PoleAtPoint:
                cval = None
            if cval is None:
                cells.append("pole")
                continue
            ev = float(np.linalg.eigvalsh(fock_blocks[k] / cval).min())
            cells.append(f"{ev:.3g}" if ev > 0 else f"{ev:.3g}!")
        print(f"{lam:6.2f}  " + "  ".join(f"{x:>10s}" for x in cells))


if __name__ == "__main__":
    main()
