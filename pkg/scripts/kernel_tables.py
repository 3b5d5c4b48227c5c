"""Schur coefficients of the kernels prod 1/(x_i;q^2)_N next to the closed forms.

Writes one CSV per N and prints whether every coefficient matches C(k; q^2N)
and the ratio c_coeff(k, N, n).
"""
import argparse
from pathlib import Path

from qwave.symfunc import c_coeff, kernel_schur_coeffs, milne_C, write_coefficients_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=4)
    ap.add_argument("--N", type=int, action="append")
    ap.add_argument("--out", default="kernel_tables")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(exist_ok=True)
    n, D = args.n, args.max_degree
    base = kernel_schur_coeffs(n, n, D)
    for N in args.N or [2, 3, 4, 5]:
        table = kernel_schur_coeffs(N, n, D)
        write_coefficients_csv(table, out / f"kernel_n{n}_N{N}.csv")
        milne_ok = all(milne_C(k, 2 * N, n) == c for k, c in table.items())
        ratio_ok = all(c_coeff(k, N, n) * base[k] == c for k, c in table.items())
        print(f"N={N}: {len(table)} coefficients, Milne {'ok' if milne_ok else 'MISMATCH'}, "
              f"ratio to N=n {'ok' if ratio_ok else 'MISMATCH'}")
    for k in sorted(base, key=lambda k: (k.size, k)):
        print(f"  k={tuple(k)}  C(k; q^{2 * n}) = {base[k]}")


if __name__ == "__main__":
    main()
