"""Truncated q-series with rational exponents, partition numbers, and
numerical Dedekind eta / Jacobi theta functions.

A :class:`FractionalQSeries` stores a finite set of exact terms together
with the order below which those terms are guaranteed complete. Products
and powers shrink that order pessimistically, so a coefficient that is
reported is never polluted by terms that were dropped earlier.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .errors import DomainError, InvalidOrderError

Rational = Union[int, Fraction]

TWO_PI_I = 2j * math.pi


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _min_trunc(a: Optional[Fraction], b: Optional[Fraction]) -> Optional[Fraction]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_trunc(t: Optional[Fraction], shift: Fraction) -> Optional[Fraction]:
    return None if t is None else t + shift


@dataclass(frozen=True)
class FractionalQSeries:
    """Sum of ``coeff * q**exponent`` known exactly for exponents below
    ``truncation_order``. ``truncation_order=None`` means the series is an
    exact finite sum (a Laurent polynomial in fractional powers of q).
    """

    terms: Mapping[Fraction, Fraction] = field(default_factory=dict)
    truncation_order: Optional[Fraction] = None

    def __post_init__(self):
        T = None if self.truncation_order is None else _frac(self.truncation_order)
        clean = {}
        for e, c in self.terms.items():
            e, c = _frac(e), _frac(c)
            if c == 0:
                continue
            if T is not None and e >= T:
                continue
            clean[e] = clean.get(e, 0) + c
        clean = {e: c for e, c in sorted(clean.items()) if c != 0}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "truncation_order", T)

    # -- constructors -------------------------------------------------------

    @classmethod
    def monomial(cls, exponent: Rational, coeff: Rational = 1, truncation_order=None):
        return cls({_frac(exponent): _frac(coeff)}, truncation_order)

    @classmethod
    def one(cls):
        return cls({Fraction(0): Fraction(1)})

    @classmethod
    def zero(cls, truncation_order=None):
        return cls({}, truncation_order)

    # -- inspection ---------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.truncation_order is None

    def coefficient(self, exponent: Rational) -> Fraction:
        e = _frac(exponent)
        if self.truncation_order is not None and e >= self.truncation_order:
            raise InvalidOrderError(
                f"coefficient of q^{e} is beyond truncation order {self.truncation_order}"
            )
        return self.terms.get(e, Fraction(0))

    def __getitem__(self, exponent):
        return self.coefficient(exponent)

    def exponents(self) -> list:
        return list(self.terms)

    def min_exponent(self) -> Optional[Fraction]:
        """Smallest exponent that can carry a nonzero coefficient.

        For a series with no stored terms this is the truncation order
        (everything below it is known to vanish)."""
        if self.terms:
            return next(iter(self.terms))
        return self.truncation_order

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        body = " + ".join(f"({c})q^{e}" for e, c in self.terms.items()) or "0"
        tail = "" if self.truncation_order is None else f" + O(q^{self.truncation_order})"
        return f"FractionalQSeries({body}{tail})"

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "FractionalQSeries":
        if isinstance(other, FractionalQSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return FractionalQSeries({Fraction(0): _frac(other)})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return FractionalQSeries(terms, _min_trunc(self.truncation_order, other.truncation_order))

    __radd__ = __add__

    def __neg__(self):
        return FractionalQSeries({e: -c for e, c in self.terms.items()}, self.truncation_order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FractionalQSeries(
                {e: c * other for e, c in self.terms.items()}, self.truncation_order
            )
        if not isinstance(other, FractionalQSeries):
            return NotImplemented
        a_min, b_min = self.min_exponent(), other.min_exponent()
        T = None
        if self.truncation_order is not None:
            T = self.truncation_order + (b_min if b_min is not None else 0)
        if other.truncation_order is not None:
            T = _min_trunc(T, other.truncation_order + (a_min if a_min is not None else 0))
        terms: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = ea + eb
                if T is not None and e >= T:
                    # exponents are sorted, so later eb only grow
                    break
                terms[e] = terms.get(e, 0) + ca * cb
        return FractionalQSeries(terms, T)

    __rmul__ = __mul__

    def shift(self, exponent: Rational) -> "FractionalQSeries":
        """Multiply by q**exponent."""
        s = _frac(exponent)
        return FractionalQSeries(
            {e + s: c for e, c in self.terms.items()}, _add_trunc(self.truncation_order, s)
        )

    def inverse(self) -> "FractionalQSeries":
        """Reciprocal series. Requires a nonzero leading term and, unless the
        series is a single exact monomial, a finite truncation order."""
        if not self.terms:
            raise ZeroDivisionError("series has no known nonzero term")
        a = self.min_exponent()
        lead = self.terms[a]
        if len(self.terms) == 1 and self.truncation_order is None:
            return FractionalQSeries({-a: 1 / lead})
        if self.truncation_order is None:
            raise InvalidOrderError("inverse of an exact multi-term series needs a truncation order")
        rel = self.truncation_order - a  # relative precision of the normalized series
        # u = 1 + sum_{e>0} u_e q^e; 1/u by the standard recursion on sorted exponents
        u = {e - a: c / lead for e, c in self.terms.items() if e != a}
        # exponents of 1/u lie in the additive monoid generated by those of u
        gens = sorted(u)
        reachable = {Fraction(0)}
        frontier = [Fraction(0)]
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = x + g
                    if y < rel and y not in reachable:
                        reachable.add(y)
                        new.append(y)
            frontier = new
        inv: dict = {}
        for e in sorted(reachable):
            if e == 0:
                inv[e] = Fraction(1)
                continue
            acc = Fraction(0)
            for g, cg in u.items():
                if g > e:
                    break
                acc += cg * inv.get(e - g, 0)
            inv[e] = -acc
        out = FractionalQSeries(inv, rel)
        return out.shift(-a) * (1 / lead)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return self.inverse() ** (-n)
        result = FractionalQSeries.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, FractionalQSeries):
            return NotImplemented
        return self.terms == other.terms and self.truncation_order == other.truncation_order

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.truncation_order))

    def truncate(self, order: Rational) -> "FractionalQSeries":
        return FractionalQSeries(self.terms, _min_trunc(self.truncation_order, _frac(order)))

    # -- numerics -----------------------------------------------------------

    def evaluate(self, tau) -> complex:
        """Sum the stored terms at q = exp(2 pi i tau); fractional powers use
        q**e := exp(2 pi i tau e)."""
        tau = as_tau(tau)
        return sum(
            float(c) * cmath.exp(TWO_PI_I * tau * float(e)) for e, c in self.terms.items()
        )


# ---------------------------------------------------------------------------
# Torus points


@dataclass(frozen=True)
class TorusPoint:
    """Modular parameter tau in the upper half-plane."""

    tau: complex

    def __post_init__(self):
        t = complex(self.tau)
        if not (math.isfinite(t.real) and math.isfinite(t.imag)):
            raise DomainError(f"tau must be finite, got {t}")
        if t.imag <= 0:
            raise DomainError(f"Im(tau) must be positive, got tau={t}")
        object.__setattr__(self, "tau", t)

    @property
    def q(self) -> complex:
        return cmath.exp(TWO_PI_I * self.tau)

    def t_transform(self) -> "TorusPoint":
        return TorusPoint(self.tau + 1)

    def s_transform(self) -> "TorusPoint":
        return TorusPoint(-1 / self.tau)


def as_tau(tau) -> complex:
    """Validate and unwrap a TorusPoint or bare complex tau."""
    if isinstance(tau, TorusPoint):
        return tau.tau
    return TorusPoint(complex(tau)).tau


def reduce_to_fundamental_domain(tau, max_steps: int = 1000):
    """Map tau into |Re tau| <= 1/2, |tau| >= 1 by T and S moves.

    Returns the reduced point and the word of moves applied ("T", "T^-1",
    "S"). Never called implicitly by the evaluators."""
    t = as_tau(tau)
    word = []
    for _ in range(max_steps):
        n = math.floor(t.real + 0.5)
        if n:
            t -= n
            word.append(f"T^{-n}")
        if abs(t) < 1 - 1e-15:
            t = -1 / t
            word.append("S")
            continue
        break
    return TorusPoint(t), word


# ---------------------------------------------------------------------------
# Partitions and eta expansions

_PARTITIONS = [1]


def partition_count(n: int) -> int:
    """Number of partitions of n, via Euler's pentagonal-number recurrence."""
    if n < 0:
        raise DomainError("partition_count needs n >= 0")
    P = _PARTITIONS
    while len(P) <= n:
        m = len(P)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * P[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * P[m - g2]
            k += 1
        P.append(total)
    return P[n]


def partition_series(order: Rational) -> FractionalQSeries:
    """sum_k P(k) q^k, complete below ``order``."""
    T = _frac(order)
    top = math.ceil(T) - 1
    return FractionalQSeries({Fraction(k): Fraction(partition_count(k)) for k in range(top + 1) if k < T}, T)


def euler_product(order: Rational) -> FractionalQSeries:
    """prod_{n>=1} (1 - q^n), complete below ``order`` (integer exponents)."""
    T = _frac(order)
    N = max(math.ceil(T) - 1, 0)
    coeffs = [0] * (N + 1)
    coeffs[0] = 1
    for n in range(1, N + 1):
        for k in range(N, n - 1, -1):
            coeffs[k] -= coeffs[k - n]
    return FractionalQSeries({Fraction(k): Fraction(c) for k, c in enumerate(coeffs) if k < T}, T)


def eta_qexp(order: Rational) -> FractionalQSeries:
    """q^{1/24} prod_{n>=1}(1 - q^n), complete below ``order``."""
    T = _frac(order)
    shift = Fraction(1, 24)
    if T <= shift:
        raise InvalidOrderError(f"eta expansion needs order > 1/24, got {T}")
    return euler_product(T - shift).shift(shift)


# ---------------------------------------------------------------------------
# Numerical eta and theta


def _check_tol(tol: float):
    if not (tol > 0 and math.isfinite(tol)):
        raise DomainError(f"tol must be a positive finite number, got {tol}")


def eta_eval(tau, tol: float = 1e-14) -> complex:
    """Dedekind eta by the product formula, stopping once |q^n| < tol."""
    t = as_tau(tau)
    _check_tol(tol)
    q = cmath.exp(TWO_PI_I * t)
    prod = 1 + 0j
    qn = q
    while abs(qn) >= tol * 1e-3:
        prod *= 1 - qn
        qn *= q
    return cmath.exp(TWO_PI_I * t / 24) * prod


def _theta3(w: complex, t: complex, tol: float) -> complex:
    # peak of |t^k q^{k^2/2}| sits at k ~ -Im(w)/Im(tau)
    peak = abs(w.imag) / t.imag + 1
    total = 1 + 0j
    running = 1.0
    k = 1
    while True:
        a = cmath.exp(TWO_PI_I * w * k + 1j * math.pi * t * k * k)
        b = cmath.exp(-TWO_PI_I * w * k + 1j * math.pi * t * k * k)
        total += a + b
        running = max(running, abs(total))
        if k > peak and max(abs(a), abs(b)) < tol * running * 1e-3:
            return total
        k += 1


def theta_eval(index: int, w, tau, tol: float = 1e-14) -> complex:
    """Jacobi theta_index(w; tau) for index in {1, 2, 3, 4}.

    theta_3 is the symmetric sum over t^k q^{k^2/2}; the others follow from
    it through half-period shifts, with the q^{1/8} t^{1/2} prefactor
    (t^{1/2} := exp(pi i w)) for theta_1 and theta_2.
    """
    t = as_tau(tau)
    _check_tol(tol)
    w = complex(w)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise DomainError(f"w must be finite, got {w}")
    if index == 3:
        return _theta3(w, t, tol)
    if index == 4:
        return _theta3(w + 0.5, t, tol)
    pref = cmath.exp(1j * math.pi * t / 4) * cmath.exp(1j * math.pi * w)
    if index == 2:
        return _theta3(w + t / 2, t, tol) * pref
    if index == 1:
        return -1j * _theta3(w + 0.5 + t / 2, t, tol) * pref
    raise DomainError(f"theta index must be 1..4, got {index}")


def triple_product(w, tau, n_factors: int) -> complex:
    """Left side of the Jacobi triple product truncated to n_factors."""
    t = as_tau(tau)
    q = cmath.exp(TWO_PI_I * t)
    z = cmath.exp(TWO_PI_I * complex(w))
    qh = cmath.exp(1j * math.pi * t)  # q^{1/2}
    out = 1 + 0j
    for n in range(1, n_factors + 1):
        qn = q**n
        qnh = qn / qh
        out *= (1 - qn) * (1 + z * qnh) * (1 + qnh / z)
    return out
