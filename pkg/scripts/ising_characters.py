"""Ising vacuum character coefficients against Gram ranks at c = 1/2, h = 0."""

import argparse
from fractions import Fraction as F

from cftkit.virasoro import VirasoroParams, character_numerator, gram_matrix, irreducible_character


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=9)
    args = ap.parse_args()
    ch = irreducible_character(3, 4, 1, 1, args.max_level + 1)
    print("level  character  rank(Gram)")
    for N in range(args.max_level + 1):
        rank = gram_matrix(VirasoroParams(F(1, 2), 0), N).rank()
        print(f"{N:5d}  {int(ch[N - F(1, 48)]):9d}  {rank:10d}")
    num = character_numerator(3, 4, 1, 1, 25)
    print("numerator:", {int(e): int(c) for e, c in sorted(num.terms.items())})


if __name__ == "__main__":
    main()
