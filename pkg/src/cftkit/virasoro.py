"""Exact Verma-module computations for the Virasoro algebra.

A descendant L_{-n_r} ... L_{-n_1}|h> (n_r >= ... >= n_1 >= 1) is stored as
the tuple ``(n_r, ..., n_1)``: largest part first, leftmost operator first.
Vectors are dicts from such tuples to ``Fraction`` coefficients.
Everything here is exact; floats only appear in the ``*_float``
convenience helpers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import exact_linalg
from .errors import InvalidModelError, OutOfTableError, SingularParameterError
from .qseries import FractionalQSeries, _frac, partition_count, partition_series

Word = Tuple[int, ...]


@dataclass(frozen=True)
class VirasoroParams:
    c: Fraction
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", _frac(self.c))
        object.__setattr__(self, "h", _frac(self.h))

    @classmethod
    def from_m(cls, m, h) -> "VirasoroParams":
        return cls(central_charge_from_m(m), h)


def partitions_desc(n: int) -> List[Word]:
    """Partitions of n as decreasing tuples, in reverse lexicographic order
    ((n,) first, (1,)*n last). This is the descendant basis order."""
    out: List[Word] = []

    def rec(remaining, max_part, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(remaining, max_part), 0, -1):
            prefix.append(part)
            rec(remaining - part, part, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def descendant_basis(level: int) -> List[Word]:
    if level < 0:
        return []
    return partitions_desc(level)


@lru_cache(maxsize=None)
def _act(n: int, word: Word, c: Fraction, h: Fraction) -> Tuple[Tuple[Word, Fraction], ...]:
    """L_n applied to the ordered word, returned in canonical form."""
    if n == 0:
        return ((word, h + sum(word)),)
    if not word:
        if n > 0:
            return ()
        return (((-n,), Fraction(1)),)
    a = word[0]
    rest = word[1:]
    if n < 0 and -n >= a:
        return (((-n,) + word, Fraction(1)),)
    if n > 0 and sum(word) < n:
        return ()
    # L_n L_{-a} rest = L_{-a} (L_n rest) + (n + a) L_{n-a} rest + central
    out: Dict[Word, Fraction] = {}
    for w, coef in _act(n, rest, c, h):
        for w2, coef2 in _act(-a, w, c, h):
            out[w2] = out.get(w2, 0) + coef * coef2
    if n + a != 0:
        for w, coef in _act(n - a, rest, c, h):
            out[w] = out.get(w, 0) + (n + a) * coef
    if n == a:
        central = c / 12 * (n**3 - n)
        if central:
            out[rest] = out.get(rest, 0) + central
    return tuple((w, x) for w, x in out.items() if x != 0)


@dataclass(frozen=True)
class VermaVector:
    params: VirasoroParams
    level: int
    coeffs: Dict[Word, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, x in self.coeffs.items():
            w = tuple(w)
            if sum(w) != self.level:
                raise ValueError(f"descendant {w} is not at level {self.level}")
            x = _frac(x)
            if x != 0:
                clean[w] = x
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def highest_weight(cls, params: VirasoroParams) -> "VermaVector":
        return cls(params, 0, {(): Fraction(1)})

    @classmethod
    def basis_vector(cls, params: VirasoroParams, word) -> "VermaVector":
        word = tuple(sorted(word, reverse=True))
        return cls(params, sum(word), {word: Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, word) -> Fraction:
        return self.coeffs.get(tuple(word), Fraction(0))

    def as_list(self) -> List[Fraction]:
        return [self.coefficient(w) for w in descendant_basis(self.level)]

    def __add__(self, other: "VermaVector") -> "VermaVector":
        if self.level != other.level or self.params != other.params:
            raise ValueError("cannot add vectors from different levels or modules")
        out = dict(self.coeffs)
        for w, x in other.coeffs.items():
            out[w] = out.get(w, 0) + x
        return VermaVector(self.params, self.level, out)

    def __mul__(self, scalar) -> "VermaVector":
        s = _frac(scalar)
        return VermaVector(self.params, self.level, {w: x * s for w, x in self.coeffs.items()})

    __rmul__ = __mul__

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w in descendant_basis(self.level):
            x = self.coeffs.get(w)
            if x is None:
                continue
            ops = "".join(f"L_{{-{k}}}" for k in w) or "1"
            parts.append(f"({x}){ops}")
        return " + ".join(parts) + "|h>"


def apply_L(n: int, v: VermaVector) -> VermaVector:
    """L_n v, normal-ordered into the descendant basis. If the target level
    v.level - n is negative, the zero vector at level 0 is returned."""
    new_level = v.level - n
    if new_level < 0:
        return VermaVector(v.params, 0, {})
    c, h = v.params.c, v.params.h
    out: Dict[Word, Fraction] = {}
    for w, x in v.coeffs.items():
        for w2, y in _act(n, w, c, h):
            out[w2] = out.get(w2, 0) + x * y
    return VermaVector(v.params, new_level, out)


@dataclass(frozen=True)
class GramMatrix:
    params: VirasoroParams
    level: int
    basis: List[Word]
    entries: List[List[Fraction]]

    def determinant(self) -> Fraction:
        return exact_linalg.determinant(self.entries)

    def rank(self) -> int:
        return exact_linalg.rank(self.entries)

    def kernel(self) -> List[List[Fraction]]:
        return exact_linalg.nullspace(self.entries, len(self.basis))


def inner_product_with_word(params: VirasoroParams, bra: Word, ket: Word) -> Fraction:
    """<L_{-bra} h, L_{-ket} h>, moving the bra's modes onto the ket."""
    v = VermaVector(params, sum(ket), {ket: 1})
    for k in bra:
        v = apply_L(k, v)
        if v.is_zero:
            return Fraction(0)
    return v.coefficient(())


def gram_matrix(params: VirasoroParams, level: int) -> GramMatrix:
    basis = descendant_basis(level)
    M = [[inner_product_with_word(params, mu, nu) for nu in basis] for mu in basis]
    return GramMatrix(params, level, basis, M)


# ---------------------------------------------------------------------------
# Kac parameterization


def central_charge_from_m(m) -> Fraction:
    m = _frac(m)
    if m == 0 or m == -1:
        raise SingularParameterError("m must not be 0 or -1")
    return 1 - Fraction(6) / (m * (m + 1))


def kac_weight(p: int, q: int, m) -> Fraction:
    """h_{p,q} = (((m+1)p - mq)^2 - 1) / (4m(m+1))."""
    m = _frac(m)
    if m == 0 or m == -1:
        raise SingularParameterError("m must not be 0 or -1")
    if p < 1 or q < 1:
        raise OutOfTableError("Kac labels must be positive")
    return (((m + 1) * p - m * q) ** 2 - 1) / (4 * m * (m + 1))


def m_from_c_float(c: float) -> float:
    """Float-only inverse of c = 1 - 6/(m(m+1)), taking the + branch:
    m = -1/2 + (1/2) sqrt((25 - c)/(1 - c))."""
    if c == 1:
        return math.inf
    return -0.5 + 0.5 * math.sqrt((25 - c) / (1 - c))


def kac_weight_float(p: int, q: int, c: float) -> float:
    m = m_from_c_float(c)
    if math.isinf(m):
        return (p - q) ** 2 / 4
    return (((m + 1) * p - m * q) ** 2 - 1) / (4 * m * (m + 1))


def kac_prefactor(level: int) -> int:
    """prod_{pq<=N} ((2p)^q q!)^{P(N-pq) - P(N-p(q+1))}."""
    N = level
    out = 1
    for p in range(1, N + 1):
        for q in range(1, N // p + 1):
            rest = N - p * (q + 1)
            e = partition_count(N - p * q) - (partition_count(rest) if rest >= 0 else 0)
            out *= ((2 * p) ** q * math.factorial(q)) ** e
    return out


def kac_determinant_closed(m, h, level: int) -> Fraction:
    """alpha_N * prod_{pq<=N} (h - h_{p,q})^{P(N-pq)} with c = 1 - 6/(m(m+1))."""
    m, h = _frac(m), _frac(h)
    N = level
    out = Fraction(kac_prefactor(N))
    for p in range(1, N + 1):
        for q in range(1, N // p + 1):
            out *= (h - kac_weight(p, q, m)) ** partition_count(N - p * q)
    return out


# ---------------------------------------------------------------------------
# Null vectors


def null_vectors(params: VirasoroParams, level: int) -> List[VermaVector]:
    """Basis of level-N vectors killed by L_1 and L_2 (hence by all L_{>0}).

    Each vector is scaled so that its first nonzero coefficient in basis
    order is 1."""
    if level < 1:
        raise ValueError("null vectors live at level >= 1")
    basis = descendant_basis(level)
    rows: List[List[Fraction]] = []
    for n in (1, 2):
        target = descendant_basis(level - n)
        if not target:
            continue
        images = [apply_L(n, VermaVector(params, level, {w: 1})) for w in basis]
        for t in target:
            rows.append([img.coefficient(t) for img in images])
    out = []
    for vec in exact_linalg.nullspace(rows, len(basis)):
        lead = next(x for x in vec if x != 0)
        out.append(VermaVector(params, level, {w: x / lead for w, x in zip(basis, vec)}))
    return out


# ---------------------------------------------------------------------------
# Minimal models


def _check_model(P: int, Q: int):
    if not (isinstance(P, int) and isinstance(Q, int)):
        raise InvalidModelError("P and Q must be integers")
    if P < 2 or Q <= P or math.gcd(P, Q) != 1:
        raise InvalidModelError(f"M({P},{Q}) needs coprime Q > P >= 2")


def minimal_m(P: int, Q: int) -> Fraction:
    _check_model(P, Q)
    return Fraction(P, Q - P)


def minimal_central_charge(P: int, Q: int) -> Fraction:
    _check_model(P, Q)
    return 1 - Fraction(6 * (Q - P) ** 2, P * Q)


def kac_table(P: int, Q: int) -> List[List[Fraction]]:
    """Rows p = 1..P-1, columns q = 1..Q-1."""
    m = minimal_m(P, Q)
    return [[kac_weight(p, q, m) for q in range(1, Q)] for p in range(1, P)]


def _check_label(P, Q, p, q):
    _check_model(P, Q)
    if not (1 <= p <= P - 1 and 1 <= q <= Q - 1):
        raise OutOfTableError(f"(p,q)=({p},{q}) is outside the Kac table of M({P},{Q})")


def character_numerator(P: int, Q: int, p: int, q: int, order) -> FractionalQSeries:
    """sum_k (q^{pq + (Pk-p)(Qk+q)} - q^{(p+Pk)(q+Qk)}), complete below order."""
    _check_label(P, Q, p, q)
    T = _frac(order)
    terms: Dict[Fraction, Fraction] = {}
    # both exponents are PQ k^2 + O(k); scan k until both exceed the order
    k = 0
    while True:
        fresh = False
        for kk in {k, -k}:
            e1 = p * q + (P * kk - p) * (Q * kk + q)
            e2 = (p + P * kk) * (q + Q * kk)
            if e1 < T:
                terms[Fraction(e1)] = terms.get(Fraction(e1), 0) + 1
                fresh = True
            if e2 < T:
                terms[Fraction(e2)] = terms.get(Fraction(e2), 0) - 1
                fresh = True
        if not fresh and P * Q * k * k - 2 * P * Q * k >= T:
            break
        k += 1
    return FractionalQSeries(terms, T)


def irreducible_character(P: int, Q: int, p: int, q: int, order) -> FractionalQSeries:
    """Character of the irreducible module M_{c, h_{p,q}} of M(P,Q),
    q^{h - c/24} * numerator / prod(1 - q^n), complete below ``order``."""
    _check_label(P, Q, p, q)
    T = _frac(order)
    c = minimal_central_charge(P, Q)
    h = kac_weight(p, q, minimal_m(P, Q))
    shift = h - c / 24
    rel = T - shift
    if rel <= 0:
        return FractionalQSeries({}, T)
    return (character_numerator(P, Q, p, q, rel) * partition_series(rel)).shift(shift)


def verma_character(c, h, order) -> FractionalQSeries:
    """sum_N P(N) q^{h+N-c/24}, complete below ``order``."""
    shift = _frac(h) - _frac(c) / 24
    return partition_series(_frac(order) - shift).shift(shift)


def kac_class_representatives(P: int, Q: int) -> List[Tuple[int, int]]:
    """One label per class (p,q) ~ (P-p, Q-q): the one with smaller p,
    ties broken by smaller q."""
    _check_model(P, Q)
    reps = []
    for p in range(1, P):
        for q in range(1, Q):
            if canonical_label(P, Q, p, q) == (p, q):
                reps.append((p, q))
    return reps


def canonical_label(P: int, Q: int, p: int, q: int) -> Tuple[int, int]:
    return min((p, q), (P - p, Q - q))
