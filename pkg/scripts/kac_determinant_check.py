"""Compare Gram determinants with the Kac closed form on random rational (m, h)."""

import argparse
import random
from fractions import Fraction as F

from cftkit.virasoro import VirasoroParams, gram_matrix, kac_determinant_closed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=5)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    for N in range(1, args.max_level + 1):
        bad = 0
        for _ in range(args.samples):
            m = F(rng.randint(1, 30), rng.randint(1, 9))
            h = F(rng.randint(-30, 30), rng.randint(1, 11))
            G = gram_matrix(VirasoroParams.from_m(m, h), N)
            bad += G.determinant() != kac_determinant_closed(m, h, N)
        print(f"level {N}: {len(G.basis):3d} states, {bad}/{args.samples} mismatches")


if __name__ == "__main__":
    main()
