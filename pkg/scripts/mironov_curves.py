"""Spectral curves of the rank-2 genus-g family at a chosen alpha."""
import argparse
import time
from fractions import Fraction

from commuting_ops import FamilySpec, build, find_M, hyperelliptic_reduce
from commuting_ops.centralizer import AnsatzSpec, solve_centralizer


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-g", type=int, default=3)
    p.add_argument("--alpha", type=Fraction, default=Fraction(1))
    a = p.parse_args()
    for g in range(1, a.max_g + 1):
        t0 = time.perf_counter()
        L, _ = build(FamilySpec("mironov_r2", g=g, alpha=a.alpha))
        basis = solve_centralizer(L, AnsatzSpec(4 * g + 2))
        M = find_M(L, 4 * g + 2)
        print(f"g={g}: centralizer dim {basis.dimension} (degree <= {basis.degree}), "
              f"{hyperelliptic_reduce(L, M)}  [{time.perf_counter() - t0:.2f}s]")


if __name__ == "__main__":
    main()
