"""Modular residuals, T-duality and the large-radius ratio for torus partition functions."""

import argparse
import math

from cftkit.qseries import eta_eval
from cftkit.torus import large_radius_asymptote, z_boson, z_dirac, z_majorana, z_minimal

TAUS = [0.1 + 0.9j, 1.5j, -0.4 + 1.2j, 0.3 + 0.7j, 0.45 + 2.0j]


def residual(fn):
    return max(max(abs(fn(t + 1) - fn(t)), abs(fn(-1 / t) - fn(t))) for t in TAUS)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=1e-12)
    args = ap.parse_args()
    for r in (1.0, math.sqrt(2), 2.0, 3.0):
        dual = max(abs(z_boson(t, r, args.tol) - z_boson(t, 2 / r, args.tol)) for t in TAUS)
        print(f"boson r={r:.4f}: modular residual {residual(lambda t: z_boson(t, r, args.tol)):.2e}, "
              f"|Z(r)-Z(2/r)| = {dual}")
    print(f"Majorana modular residual {residual(lambda t: z_majorana(t, args.tol)):.2e}")
    print(f"M(2,5) modular residual {residual(lambda t: z_minimal(2, 5, t, None, args.tol)):.2e}")
    print(f"Dirac - boson(r=2): {max(abs(z_dirac(t) - z_boson(t, 2.0)) for t in TAUS):.2e}")
    print(f"M(3,4) - Majorana: {max(abs(z_minimal(3, 4, t) - z_majorana(t)) for t in TAUS):.2e}")
    print("large radius, r = 8:")
    for t in TAUS:
        z = z_boson(t, 8.0).real
        naive = 8.0 / (math.sqrt(t.imag) * abs(eta_eval(t)) ** 2)
        print(f"  tau={t}: Z/asymptote = {z / large_radius_asymptote(t, 8.0).real:.12f}, "
              f"Z/(r/(sqrt(Im tau)|eta|^2)) = {z / naive:.12f}")


if __name__ == "__main__":
    main()
