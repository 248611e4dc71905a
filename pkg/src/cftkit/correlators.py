"""Closed-form correlators on the plane.

Points may be Python complex numbers, or ``int``/``Fraction`` for real
rational points. In the latter case every function whose answer is a
rational function of the points (Pfaffians, derivative-of-boson Wick sums,
ghost correlators) computes exactly in ``Fraction``.

Non-integer powers are only ever taken of positive reals (moduli). Phases
z/|z| are raised to integer powers only, so lattice correlators are
single-valued by construction.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence, Tuple

from .errors import DegenerateConfigurationError, DomainError, ShapeError

NEUTRAL_TOL = 1e-12


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _check_distinct(points: Sequence):
    for i, j in itertools.combinations(range(len(points)), 2):
        if points[i] == points[j]:
            raise DegenerateConfigurationError(f"points {i} and {j} coincide at {points[i]}")


def _is_zero_sum(values) -> bool:
    values = list(values)
    if all(_is_exact(v) for v in values):
        return sum(values, Fraction(0)) == 0
    return abs(sum(values)) < NEUTRAL_TOL


def _power(z: complex, a, b) -> complex:
    """z^a zbar^b = |z|^(a+b) (z/|z|)^(a-b). The phase power is exact when
    a-b is an integer and uses the principal branch otherwise."""
    z = complex(z)
    mod = abs(z)
    spin = a - b
    u = z / mod
    if _is_exact(spin):
        integral = Fraction(spin).denominator == 1
    else:
        integral = float(spin).is_integer()
    if integral:
        phase = u ** int(spin)
    else:
        phase = cmath.exp(1j * float(spin) * cmath.phase(u))
    return mod ** float(a + b) * phase


# ---------------------------------------------------------------------------
# Vertex operators


@dataclass(frozen=True)
class VertexCharge:
    z: complex
    alpha: float


@dataclass(frozen=True)
class LatticeCharge:
    z: complex
    e: int
    m: int


def vertex_npoint(insertions: Sequence) -> float:
    """<V_a1(z1) ... V_an(zn)> = prod_{j<k} |z_j - z_k|^{2 a_j a_k} when the
    charges sum to zero, and 0 otherwise. Insertions are VertexCharge or
    (z, alpha) pairs."""
    ins = [x if isinstance(x, VertexCharge) else VertexCharge(*x) for x in insertions]
    _check_distinct([x.z for x in ins])
    if not _is_zero_sum(x.alpha for x in ins):
        return 0.0
    out = 1.0
    for a, b in itertools.combinations(ins, 2):
        out *= abs(complex(a.z) - complex(b.z)) ** float(2 * a.alpha * b.alpha)
    return out


def vertex_lattice_npoint(insertions: Sequence, r) -> complex:
    """Correlator of compact-boson vertex operators V_{e,m} at radius r.

    Pairwise factor (z_ij)^{a_i a_j} (zbar_ij)^{abar_i abar_j}, written as
    |z_ij|^{2(e_i e_j/r^2 + m_i m_j r^2/4)} (z_ij/|z_ij|)^{e_i m_j + m_i e_j}.
    Zero unless sum e = sum m = 0. Insertions are LatticeCharge or (z, e, m)."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    ins = [x if isinstance(x, LatticeCharge) else LatticeCharge(*x) for x in insertions]
    _check_distinct([x.z for x in ins])
    if sum(x.e for x in ins) != 0 or sum(x.m for x in ins) != 0:
        return 0j
    rho = float(r) ** 2
    out = 1 + 0j
    for a, b in itertools.combinations(ins, 2):
        z = complex(a.z) - complex(b.z)
        mod_exp = 2 * (a.e * b.e / rho + a.m * b.m * rho / 4)
        spin = a.e * b.m + a.m * b.e
        out *= abs(z) ** mod_exp * (z / abs(z)) ** spin
    return out


def lattice_phase_exponent(e1: int, m1: int, e2: int, m2: int, r) -> Tuple[float, int]:
    """(a1 a2 - abar1 abar2 computed from the charges, e1 m2 + m1 e2)."""
    a1, b1 = e1 / r + m1 * r / 2, e1 / r - m1 * r / 2
    a2, b2 = e2 / r + m2 * r / 2, e2 / r - m2 * r / 2
    return a1 * a2 - b1 * b2, e1 * m2 + m1 * e2


# ---------------------------------------------------------------------------
# Pfaffians and free fermions


def _check_antisymmetric(A):
    n = len(A)
    if any(len(row) != n for row in A):
        raise ShapeError("Pfaffian needs a square matrix")
    if n % 2:
        raise ShapeError(f"Pfaffian needs even order, got {n}")
    for i in range(n):
        for j in range(i, n):
            a, b = A[i][j], A[j][i]
            if _is_exact(a) and _is_exact(b):
                bad = a + b != 0
            else:
                bad = abs(a + b) > 1e-12
            if bad:
                raise ShapeError(f"matrix is not antisymmetric at ({i},{j})")


def pfaffian(A):
    """Pfaffian by expansion along the first remaining row, memoized on the
    set of remaining indices. Works over any ring (Fraction stays exact)."""
    _check_antisymmetric(A)
    n = len(A)

    @lru_cache(maxsize=None)
    def pf(mask: int):
        if mask == 0:
            return 1
        idx = [i for i in range(n) if mask >> i & 1]
        i = idx[0]
        total = 0
        for k, j in enumerate(idx[1:]):
            if A[i][j] == 0:
                continue
            term = A[i][j] * pf(mask & ~(1 << i) & ~(1 << j))
            total = total + term if k % 2 == 0 else total - term
        return total

    return pf((1 << n) - 1)


def _as_field(points):
    if all(_is_exact(z) for z in points):
        return [Fraction(z) for z in points]
    return [complex(z) for z in points]


def psi_kernel(points) -> List[list]:
    zs = _as_field(points)
    n = len(zs)
    return [[0 if i == j else 1 / (zs[i] - zs[j]) for j in range(n)] for i in range(n)]


def psi_npoint(points):
    """<psi(z1) ... psi(zn)> = Pf(1/(z_i - z_j)) for even n, 0 for odd n."""
    _check_distinct(points)
    if len(points) % 2:
        return 0
    return pfaffian(psi_kernel(points))


def perfect_matchings(items: Sequence):
    items = list(items)
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in perfect_matchings(rest):
            yield [(a, items[k])] + m


def dphi_npoint(points, with_i: bool = True):
    """Wick sum over perfect matchings of derivative-of-boson propagators.

    With ``with_i`` (the default) the fields are i d(phi), whose propagator
    is +1/(w-z)^2; this is the normalization in which <psi...psi>^2 equals
    the boson correlator. With ``with_i=False`` the propagator is the bare
    <d(phi) d(phi)> = -1/(w-z)^2, so the result differs by (-1)^{n/2}."""
    _check_distinct(points)
    if len(points) % 2:
        raise ShapeError(f"d(phi) correlator needs an even number of points, got {len(points)}")
    zs = _as_field(points)
    sign = 1 if with_i else -1
    total = 0
    for match in perfect_matchings(range(len(zs))):
        term = 1
        for a, b in match:
            term = term * sign / (zs[a] - zs[b]) ** 2
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Twist fields


def cross_ratio(z1, z2, z3, z4) -> complex:
    z1, z2, z3, z4 = map(complex, (z1, z2, z3, z4))
    return (z1 - z2) * (z3 - z4) / ((z1 - z3) * (z2 - z4))


def sigma_four_point(z1, z2, z3, z4, branch: int = 1) -> float:
    """<sigma sigma sigma sigma> with unit normalization:

        1/2 |z13 z24 / (z12 z23 z34 z41)|^{1/4} (|1 + s| + |1 - s|),

    s = sqrt(1 - lambda), lambda = z12 z34 / (z13 z24). ``branch=-1`` uses
    the other square root; the value is the same."""
    pts = [complex(z) for z in (z1, z2, z3, z4)]
    _check_distinct(pts)
    a, b, c, d = pts
    lam = cross_ratio(a, b, c, d)
    if not (math.isfinite(lam.real) and math.isfinite(lam.imag)) or lam in (0, 1):
        raise DegenerateConfigurationError(f"degenerate cross-ratio {lam}")
    s = branch * cmath.sqrt(1 - lam)
    pref = abs((a - c) * (b - d) / ((a - b) * (b - c) * (c - d) * (d - a))) ** 0.25
    return 0.5 * pref * (abs(1 + s) + abs(1 - s))


def bosonization_sigma_sq(points) -> float:
    """<sigma ... sigma>^2 = 2^{-n/2} sum over k_i = +-1 with sum k = 0 of
    prod_{i<j} |z_i - z_j|^{k_i k_j / 2}."""
    n = len(points)
    if n % 2:
        raise ShapeError(f"needs an even number of points, got {n}")
    zs = [complex(z) for z in points]
    _check_distinct(zs)
    if n == 0:
        return 1.0
    dist = [[abs(zs[i] - zs[j]) for j in range(n)] for i in range(n)]
    total = []
    for plus in itertools.combinations(range(n), n // 2):
        k = [-1] * n
        for i in plus:
            k[i] = 1
        term = 1.0
        for i, j in itertools.combinations(range(n), 2):
            term *= dist[i][j] ** (k[i] * k[j] / 2)
        total.append(term)
    return 2 ** (-n / 2) * math.fsum(total)


# ---------------------------------------------------------------------------
# bc ghosts


def bc_two_point(w, z):
    """<b(w) c(z)> = 1/(w - z)."""
    _check_distinct([w, z])
    w, z = _as_field([w, z])
    return 1 / (w - z)


def ccc_three_point(z1, z2, z3):
    """<c(z1) c(z2) c(z3)> = z12 z13 z23."""
    _check_distinct([z1, z2, z3])
    z1, z2, z3 = _as_field([z1, z2, z3])
    return (z1 - z2) * (z1 - z3) * (z2 - z3)


def ghost_selection(n_c: int, n_b: int) -> bool:
    """A correlator of n_c c-ghosts and n_b b-ghosts (one chirality) can be
    nonzero only if n_c - n_b = 3."""
    if n_c < 0 or n_b < 0:
        raise DomainError("ghost counts must be nonnegative")
    return n_c - n_b == 3


# ---------------------------------------------------------------------------
# Global conformal invariance


def two_point_prefactor(h1, hb1, h2, hb2, z1, z2) -> Tuple[complex, bool]:
    """(z12^{-(h1+h2)} zbar12^{-(hb1+hb2)}, whether h1 = h2 and hb1 = hb2).
    The second entry is the condition for a nonzero constant between primaries."""
    _check_distinct([z1, z2])
    val = _power(complex(z1) - complex(z2), -(h1 + h2), -(hb1 + hb2))
    return val, (h1 == h2 and hb1 == hb2)


def npoint_exponents(weights: Sequence) -> dict:
    """alpha_ij = (h_i + h_j - sum_k h_k / (n-1)) / (n-2) for i < j."""
    n = len(weights)
    if n < 3:
        raise ShapeError("needs at least three weights")
    total = sum(weights)
    return {
        (i, j): (weights[i] + weights[j] - total / (n - 1)) / (n - 2)
        for i, j in itertools.combinations(range(n), 2)
    }


def three_point_exponents(weights: Sequence) -> dict:
    """alpha_12 = (h1 + h2 - h3)/2 and cyclic."""
    if len(weights) != 3:
        raise ShapeError("three_point_exponents needs three weights")
    h1, h2, h3 = weights
    return {(0, 1): (h1 + h2 - h3) / 2, (0, 2): (h1 + h3 - h2) / 2, (1, 2): (h2 + h3 - h1) / 2}


def _prefactor(exps, exps_bar, points) -> complex:
    out = 1 + 0j
    for (i, j), a in exps.items():
        out *= _power(complex(points[i]) - complex(points[j]), -2 * a, -2 * exps_bar[(i, j)])
    return out


def three_point_prefactor(weights: Sequence[Tuple], points) -> complex:
    """prod_{i<j} z_ij^{-2 alpha_ij} zbar_ij^{-2 alphabar_ij}; weights are (h, hbar) pairs."""
    _check_distinct(points)
    hs, hbs = [w[0] for w in weights], [w[1] for w in weights]
    return _prefactor(three_point_exponents(hs), three_point_exponents(hbs), points)


def npoint_prefactor(weights: Sequence[Tuple], points) -> complex:
    """Szego-kernel prefactor of an n-point function of primaries; the
    remaining cross-ratio dependence is not fixed by global symmetry."""
    _check_distinct(points)
    if len(weights) != len(points):
        raise ShapeError("one (h, hbar) pair per point")
    hs, hbs = [w[0] for w in weights], [w[1] for w in weights]
    return _prefactor(npoint_exponents(hs), npoint_exponents(hbs), points)
