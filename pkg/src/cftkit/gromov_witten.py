"""Genus-zero Gromov-Witten invariants of CP^1 and CP^2.

N(d) counts rational degree-d curves in CP^2 through 3d - 1 generic
points. The CP^2 potential is

    Phi = t0^2 t2/2 + t0 t1^2/2 - q t2^2/2 + sum_d N(d)/(3d-1)! q^d t2^{3d-1} e^{d t1}

and associativity of the big quantum product (WDVV) is checked
numerically against an explicit truncation bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .errors import DomainError

CP2_PAIRING = {(0, 2): 1, (1, 1): 1, (2, 0): 1}  # inverse is the same matrix


@lru_cache(maxsize=None)
def _km(dmax: int) -> Tuple[int, ...]:
    N = [0, 1]
    for d in range(2, dmax + 1):
        total = 0
        for k in range(1, d):
            l = d - k
            total += N[k] * N[l] * k * k * l * (
                l * math.comb(3 * d - 4, 3 * k - 2) - k * math.comb(3 * d - 4, 3 * k - 1)
            )
        N.append(total)
    return tuple(N)


def km_counts(dmax: int) -> Dict[int, int]:
    """{d: N(d)} for 1 <= d <= dmax, by the Kontsevich-Manin recursion."""
    if not (isinstance(dmax, int) and dmax >= 1):
        raise DomainError(f"dmax must be a positive integer, got {dmax}")
    N = _km(dmax)
    return {d: N[d] for d in range(1, dmax + 1)}


# ---------------------------------------------------------------------------
# CP^1


@dataclass(frozen=True)
class QClass:
    """q^power times a basis class, "1" or "w"."""

    power: int
    cls: str

    def __str__(self):
        q = "" if self.power == 0 else ("q*" if self.power == 1 else f"q^{self.power}*")
        return f"{q}[{self.cls}]"


def quantum_product_cp1(a, b) -> QClass:
    """Small quantum product on H*(CP^1): 1 is the unit and w*w = q*1.
    Arguments are basis labels or QClass values."""
    a = a if isinstance(a, QClass) else QClass(0, a)
    b = b if isinstance(b, QClass) else QClass(0, b)
    for x in (a, b):
        if x.cls not in ("1", "w"):
            raise DomainError(f"CP^1 basis classes are '1' and 'w', got {x.cls!r}")
    power = a.power + b.power
    if a.cls == "1":
        return QClass(power, b.cls)
    if b.cls == "1":
        return QClass(power, a.cls)
    return QClass(power + 1, "1")


def gw_potential_cp1(t0: float, t1: float, q: float) -> float:
    """t0^2 t1/2 + q (e^{t1} - 1 - t1 - t1^2/2)."""
    return t0 * t0 * t1 / 2 + q * (math.expm1(t1) - t1 - t1 * t1 / 2)


def cp1_third_derivative(indices: Sequence[int], t0: float, t1: float, q: float) -> float:
    """d^3 Phi / dt_a dt_b dt_c for the CP^1 potential, indices in {0, 1}."""
    if len(indices) != 3 or any(i not in (0, 1) for i in indices):
        raise DomainError(f"need three indices in {{0, 1}}, got {indices}")
    n0 = list(indices).count(0)
    if n0 == 2:
        return 1.0
    if n0 == 0:
        return q * math.exp(t1)
    return 0.0


# ---------------------------------------------------------------------------
# CP^2


def cp2_coefficient(d: int, counts: Optional[Mapping[int, int]] = None) -> Fraction:
    """N(d)/(3d-1)!, the coefficient of q^d t2^{3d-1} e^{d t1}."""
    N = counts[d] if counts is not None else km_counts(d)[d]
    return Fraction(N, math.factorial(3 * d - 1))


def _counts(dmax: int, counts: Optional[Mapping[int, int]]):
    table = km_counts(dmax)
    if counts is not None:
        table.update({d: v for d, v in counts.items() if d <= dmax})
    return table


def gw_potential_cp2(t0, t1, t2, q, dmax: int, counts: Optional[Mapping[int, int]] = None) -> float:
    """CP^2 potential truncated at degree dmax. ``counts`` overrides entries
    of the N(d) table."""
    table = _counts(dmax, counts)
    out = t0 * t0 * t2 / 2 + t0 * t1 * t1 / 2 - q * t2 * t2 / 2
    for d in range(1, dmax + 1):
        out += float(cp2_coefficient(d, table)) * q**d * t2 ** (3 * d - 1) * math.exp(d * t1)
    return out


def _degree_term_derivative(d: int, coeff: float, n1: int, n2: int, t1, t2, q) -> float:
    """d^{n1}/dt1 d^{n2}/dt2 of coeff q^d t2^{3d-1} e^{d t1}."""
    power = 3 * d - 1
    falling = 1
    for j in range(n2):
        falling *= power - j
    if falling == 0:
        return 0.0
    return coeff * q**d * d**n1 * falling * t2 ** (power - n2) * math.exp(d * t1)


def _classical_third(indices) -> float:
    key = tuple(sorted(indices))
    return 1.0 if key in ((0, 0, 2), (0, 1, 1)) else 0.0


def cp2_third_derivative(
    indices: Sequence[int], t0, t1, t2, q, dmax: int, counts: Optional[Mapping[int, int]] = None
) -> float:
    """Any third partial derivative of the truncated CP^2 potential, in closed
    form (the -q t2^2/2 term never contributes)."""
    if len(indices) != 3 or any(i not in (0, 1, 2) for i in indices):
        raise DomainError(f"need three indices in {{0, 1, 2}}, got {indices}")
    out = _classical_third(indices)
    if 0 in indices:
        return out
    n1 = list(indices).count(1)
    n2 = 3 - n1
    table = _counts(dmax, counts)
    for d in range(1, dmax + 1):
        out += _degree_term_derivative(d, float(cp2_coefficient(d, table)), n1, n2, t1, t2, q)
    return out


@dataclass(frozen=True)
class WDVVResult:
    residual: float
    bound: float

    @property
    def within_bound(self) -> bool:
        return abs(self.residual) <= self.bound


def _wdvv_sides(third, a, b, e, f):
    lhs, rhs, scale = 0.0, 0.0, 0.0
    for (c, d), h in CP2_PAIRING.items():
        x = third(a, b, c) * h * third(d, e, f)
        y = third(e, b, c) * h * third(d, a, f)
        lhs += x
        rhs += y
        scale += abs(x) + abs(y)
    return lhs, rhs, scale


def wdvv_residual(
    point: Tuple[float, float, float, float],
    dmax: int,
    indices: Tuple[int, int, int, int],
    counts: Optional[Mapping[int, int]] = None,
) -> WDVVResult:
    """LHS - RHS of sum Phi_abc h^cd Phi_def = sum Phi_ebc h^cd Phi_daf for
    the potential truncated at dmax, with (a, b, e, f) = ``indices``.

    The bound covers what truncation can break: the third derivatives of
    the first dropped term (degree dmax+1, with its true N), enlarged by a
    geometric tail factor and fed through the quadratic products, plus a
    floating-point floor proportional to the magnitudes summed."""
    t0, t1, t2, q = point
    a, b, e, f = indices
    if any(i not in (0, 1, 2) for i in indices):
        raise DomainError(f"indices must lie in {{0, 1, 2}}, got {indices}")

    def third(i, j, k):
        return cp2_third_derivative((i, j, k), t0, t1, t2, q, dmax, counts)

    lhs, rhs, scale = _wdvv_sides(third, a, b, e, f)

    D = dmax + 1
    exact = km_counts(D + 1)
    mag = lambda d: abs(float(cp2_coefficient(d, exact)) * q**d * t2 ** (3 * d - 1) * math.exp(d * t1))
    prev, first = mag(D - 1), mag(D)
    ratio = first / prev if prev else 0.0
    tail = 1 / (1 - ratio) if ratio < 0.5 else float("inf")

    def drop(i, j, k):
        if 0 in (i, j, k):
            return 0.0
        n1 = (i, j, k).count(1)
        c = float(cp2_coefficient(D, exact))
        return abs(_degree_term_derivative(D, c, n1, 3 - n1, t1, abs(t2), abs(q))) * tail

    trunc = 0.0
    for (c, d), h in CP2_PAIRING.items():
        for (x1, x2) in (((a, b, c), (d, e, f)), ((e, b, c), (d, a, f))):
            p, r = abs(third(*x1)), abs(third(*x2))
            dp, dr = drop(*x1), drop(*x2)
            trunc += dp * r + p * dr + dp * dr
    floor = 8 * 2.220446049250313e-16 * max(scale, 1e-300)
    return WDVVResult(lhs - rhs, trunc + floor)


def all_index_quadruples():
    return list(itertools.product(range(3), repeat=4))
