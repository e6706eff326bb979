"""Compare the constructor with the published rank 4..7 operators.

Prints, for each rank and genus, the additive constant separating the two.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from golden import ARGS, b_value, golden  # noqa: E402

from commuting_ops import FamilySpec, build  # noqa: E402


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-g", type=int, default=3)
    a = p.parse_args()
    for r in sorted(ARGS):
        for g in range(1, a.max_g + 1):
            L, _ = build(FamilySpec("cheb_canonical", r=r, g=g, a=ARGS[r][0], b=b_value(r)))
            diff = golden(r, g) - L
            if diff.order > 0:
                print(f"r={r} g={g}: MISMATCH beyond a constant")
                continue
            c = diff.coeff(0) if not diff.is_zero() else 0
            print(f"r={r} g={g}: published - constructed = {c}")


if __name__ == "__main__":
    main()
