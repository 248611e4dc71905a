"""WDVV residuals for CP^2 against truncation degree, plus a mutated-count control."""

import argparse

from cftkit.gromov_witten import all_index_quadruples, km_counts, wdvv_residual


def worst(point, dmax, counts=None):
    rs = [wdvv_residual(point, dmax, idx, counts=counts) for idx in all_index_quadruples()]
    return max(abs(r.residual) for r in rs), max(abs(r.residual) / r.bound if r.bound else 0 for r in rs)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--point", type=float, nargs=4, default=[0.1, 0.2, 0.05, 0.1], metavar=("T0", "T1", "T2", "Q"))
    ap.add_argument("--dmax", type=int, default=8)
    args = ap.parse_args()
    print("N(d):", km_counts(args.dmax))
    for d in range(1, args.dmax + 1):
        res, ratio = worst(args.point, d)
        print(f"dmax={d}: max |residual| {res:.3e}, max residual/bound {ratio:.3g}")
    res, ratio = worst(args.point, 5, counts={3: 13})
    print(f"N(3)=13 control, dmax=5: max |residual| {res:.3e}, max residual/bound {ratio:.3g}")


if __name__ == "__main__":
    main()
