"""Find companions for the Chebyshev family over a grid of (r, g) and certify them.

    python scripts/chebyshev_family_survey.py --max-r 4 --max-g 2
"""
import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from commuting_ops import FamilySpec, build, certify_rank, find_M, hyperelliptic_reduce
from commuting_ops.spectral import curve_report


@dataclass
class SurveyConfig:
    max_r: int = 3
    max_g: int = 2
    lambdas: tuple = (Fraction(2), Fraction(-1, 3))


def survey(cfg: SurveyConfig):
    for r in range(2, cfg.max_r + 1):
        for g in range(1, cfg.max_g + 1):
            t0 = time.perf_counter()
            L, _ = build(FamilySpec("cheb_canonical", r=r, g=g))
            M = find_M(L, (2 * g + 1) * r)
            curve = hyperelliptic_reduce(L, M)
            cert = [certify_rank(L, M, curve, lam).certified
                    for lam in cfg.lambdas if curve.f(lam) != 0]
            dt = time.perf_counter() - t0
            print(f"r={r} g={g}  {curve}")
            print(f"    {curve_report(curve).summary().split('; ')[1]}; "
                  f"certified at {sum(cert)}/{len(cert)} points; {dt:.2f}s")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-r", type=int, default=SurveyConfig.max_r)
    p.add_argument("--max-g", type=int, default=SurveyConfig.max_g)
    a = p.parse_args()
    survey(SurveyConfig(a.max_r, a.max_g))


if __name__ == "__main__":
    main()
