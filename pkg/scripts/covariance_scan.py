"""Check box^l pi_{n-l}(xi) = pi_{n+l}(xi) box^l beyond the acceptance range and time it.

    python3 scripts/covariance_scan.py --n 2 --max-degree 6 --l 1 --l 2 --l 3
"""
import argparse
import time

from qwave.forms import verify_covariance
from qwave.report import failures


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=5)
    ap.add_argument("--l", type=int, action="append")
    args = ap.parse_args()
    for l in args.l or [1, 2]:
        for d in range(args.n * l, args.max_degree + 1):
            t0 = time.perf_counter()
            cases = verify_covariance(args.n, l, d)
            bad = failures(cases)
            dt = time.perf_counter() - t0
            print(f"n={args.n} l={l} D={d}: {len(cases) - len(bad)}/{len(cases)} generators ok  {dt:7.2f}s")
            for c in bad:
                print(f"   {c.id}: {c.witness}")


if __name__ == "__main__":
    main()
