"""Count failing U_q sl_2n relations for both readings of the E_n formula.

The ordering z_n^n z_a^alpha is the one that yields a representation; the
other ordering is kept only so this comparison can be reproduced.
"""
import argparse

from qwave.report import failures
from qwave.uqaction import E_N_VARIANTS, INITIAL, twisted, verify_hopf_relations


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--max-degree", type=int, default=2)
    args = ap.parse_args()
    for variant in E_N_VARIANTS:
        for kind in (INITIAL, twisted("sym")):
            cases = verify_hopf_relations(args.n, kind, args.max_degree, variant)
            bad = failures(cases)
            print(f"{variant:9s} {str(kind):8s}: {len(bad):3d} failing of {len(cases)}")


if __name__ == "__main__":
    main()
