"""Virasoro generators on level-truncated Fock spaces.

Two realizations:

* the free boson (abelian Sugawara), L_n = 1/2 sum_k :a_k a_{n-k}:, with
  [a_n, a_m] = n delta_{n+m,0} and a_0 acting as a rational number alpha;
* the free Majorana fermion in the NS (half-integer modes) or R (integer
  modes) sector, L_n = sum_m (m/2 + 1/4) :b_{n-m} b_m: (+ 1/16 on L_0 in R),
  with {b_n, b_m} = delta_{n+m,0}.

Boson states are decreasing tuples of creation modes. Fermion states are
ascending tuples of occupied modes s_1 < ... < s_r standing for
b_{-s_1} ... b_{-s_r}|vac>; in the R sector mode 0 marks b_0|vac_R>.
Basis vectors are not normalized; ``metric()`` returns their norms.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

from .errors import DomainError, InsufficientCutoffError
from .qseries import _frac
from .virasoro import partitions_desc

State = Tuple
Vec = Dict[State, Fraction]

HALF = Fraction(1, 2)


def _accumulate(out: Vec, vec: Vec, scale: Fraction):
    for s, x in vec.items():
        y = out.get(s, 0) + scale * x
        if y:
            out[s] = y
        else:
            out.pop(s, None)


# ---------------------------------------------------------------------------
# Boson


def _boson_mode(k: int, alpha: Fraction, state: State) -> Vec:
    if k == 0:
        return {state: alpha} if alpha else {}
    if k < 0:
        return {tuple(sorted(state + (-k,), reverse=True)): Fraction(1)}
    mult = state.count(k)
    if not mult:
        return {}
    lst = list(state)
    lst.remove(k)
    return {tuple(lst): Fraction(k * mult)}


def _apply_modes(mode_fn, ops, vec: Vec) -> Vec:
    # ops are applied right to left, like an operator product
    for k in reversed(ops):
        out: Vec = {}
        for s, x in vec.items():
            _accumulate(out, mode_fn(k, s), x)
        vec = out
        if not vec:
            break
    return vec


@lru_cache(maxsize=None)
def _boson_L(n: int, alpha: Fraction, state: State) -> Tuple[Tuple[State, Fraction], ...]:
    mode = lambda k, s: _boson_mode(k, alpha, s)
    level = sum(state)
    K = level + abs(n) + 1
    out: Vec = {}
    for k in range(-K, K + 1):
        i, j = k, n - k
        ops = (j, i) if (i > 0 and j <= 0) else (i, j)
        _accumulate(out, _apply_modes(mode, ops, {state: Fraction(1)}), HALF)
    return tuple(out.items())


def boson_basis(cutoff: int) -> List[State]:
    return [p for level in range(cutoff + 1) for p in partitions_desc(level)]


def boson_norm(state: State) -> Fraction:
    out = 1
    for k, mult in Counter(state).items():
        out *= k**mult * math.factorial(mult)
    return Fraction(out)


# ---------------------------------------------------------------------------
# Fermion


def _fermion_mode(k: Fraction, state: State) -> Vec:
    if k < 0:
        s = -k
        if s in state:
            return {}
        below = sum(1 for x in state if x < s)
        new = tuple(sorted(state + (s,)))
        return {new: Fraction(-1 if below % 2 else 1)}
    if k in state:
        below = sum(1 for x in state if x < k)
        sign = -1 if below % 2 else 1
        coef = HALF if k == 0 else Fraction(1)
        return {tuple(x for x in state if x != k): sign * coef}
    if k == 0:
        # 0 is always the first slot, so no sign
        return {(Fraction(0),) + state: Fraction(1)}
    return {}


def _vac_expectation(x: Fraction, y: Fraction) -> Fraction:
    """<vac| b_x b_y |vac>, nonzero only for x = -y >= 0."""
    if x + y != 0 or x < 0:
        return Fraction(0)
    return HALF if x == 0 else Fraction(1)


@lru_cache(maxsize=None)
def _fermion_L(n: int, sector: str, state: State) -> Tuple[Tuple[State, Fraction], ...]:
    level = sum(state)
    shift = HALF if sector == "NS" else Fraction(0)
    K = int(level) + abs(n) + 2
    out: Vec = {}
    for k in range(-K, K + 1):
        m = k + shift
        coef = m / 2 + Fraction(1, 4)
        if not coef:
            continue
        x = n - m
        vec = _apply_modes(_fermion_mode, (x, m), {state: Fraction(1)})
        ev = _vac_expectation(x, m)
        if ev:
            _accumulate(vec, {state: Fraction(1)}, -ev)
        _accumulate(out, vec, coef)
    if n == 0 and sector == "R":
        _accumulate(out, {state: Fraction(1)}, Fraction(1, 16))
    return tuple(out.items())


def _distinct_parts(target: Fraction, parts: List[Fraction]) -> List[State]:
    out = []

    def rec(i, remaining, chosen):
        if remaining == 0:
            out.append(tuple(chosen))
        for j in range(i, len(parts)):
            p = parts[j]
            if p > remaining:
                break
            chosen.append(p)
            rec(j + 1, remaining - p, chosen)
            chosen.pop()

    rec(0, target, [])
    return out


def fermion_basis(sector: str, cutoff) -> List[State]:
    """All states of level <= cutoff, ordered by level then lexicographically."""
    cutoff = _frac(cutoff)
    if sector == "NS":
        parts = [Fraction(2 * k + 1, 2) for k in range(int(cutoff) + 1)]
        levels = [Fraction(k, 2) for k in range(int(2 * cutoff) + 1)]
    elif sector == "R":
        parts = [Fraction(k) for k in range(1, int(cutoff) + 1)]
        levels = [Fraction(k) for k in range(int(cutoff) + 1)]
    else:
        raise DomainError(f"sector must be 'NS' or 'R', got {sector!r}")
    out = []
    for lv in levels:
        states = sorted(_distinct_parts(lv, [p for p in parts if p <= lv]))
        out.extend(states)
        if sector == "R":
            out.extend((Fraction(0),) + s for s in states)
    return out


def fermion_norm(state: State) -> Fraction:
    return HALF if state and state[0] == 0 else Fraction(1)


# ---------------------------------------------------------------------------
# Operators


@dataclass(frozen=True)
class GradedSparseOperator:
    """Sparse matrix on an ordered basis. ``entries[(i, j)]`` is the
    coefficient of basis[i] in the image of basis[j]. ``shift`` is the
    amount by which the operator lowers the level."""

    basis: Tuple[State, ...]
    levels: Tuple[Fraction, ...]
    entries: Dict[Tuple[int, int], Fraction]
    shift: Fraction

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "GradedSparseOperator") -> "GradedSparseOperator":
        by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (i, j), x in self.entries.items():
            by_row.setdefault(j, []).append((i, x))
        out: Dict[Tuple[int, int], Fraction] = {}
        for (k, j), y in other.entries.items():
            for i, x in by_row.get(k, ()):
                v = out.get((i, j), 0) + x * y
                if v:
                    out[(i, j)] = v
                else:
                    out.pop((i, j), None)
        return GradedSparseOperator(self.basis, self.levels, out, self.shift + other.shift)

    def __add__(self, other: "GradedSparseOperator") -> "GradedSparseOperator":
        out = dict(self.entries)
        for key, y in other.entries.items():
            v = out.get(key, 0) + y
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return GradedSparseOperator(self.basis, self.levels, out, self.shift)

    def scale(self, s) -> "GradedSparseOperator":
        s = _frac(s)
        if s == 0:
            return GradedSparseOperator(self.basis, self.levels, {}, self.shift)
        return GradedSparseOperator(
            self.basis, self.levels, {k: v * s for k, v in self.entries.items()}, self.shift
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def restrict_domain(self, max_level) -> "GradedSparseOperator":
        """Drop columns whose basis state sits above max_level."""
        max_level = _frac(max_level)
        keep = {
            key: v for key, v in self.entries.items() if self.levels[key[1]] <= max_level
        }
        return GradedSparseOperator(self.basis, self.levels, keep, self.shift)

    def column(self, state) -> Dict[State, Fraction]:
        j = self.basis.index(tuple(state))
        return {self.basis[i]: x for (i, jj), x in self.entries.items() if jj == j}

    def to_dense(self) -> List[List[Fraction]]:
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for (i, j), x in self.entries.items():
            M[i][j] = x
        return M


def identity_operator(basis, levels) -> GradedSparseOperator:
    return GradedSparseOperator(
        tuple(basis), tuple(levels), {(i, i): Fraction(1) for i in range(len(basis))}, Fraction(0)
    )


def _build(basis, levels, cutoff, action: Callable, n) -> GradedSparseOperator:
    index = {s: i for i, s in enumerate(basis)}
    entries = {}
    for j, s in enumerate(basis):
        for t, x in action(s):
            i = index.get(t)
            if i is None:
                # image above the cutoff: truncated away
                continue
            entries[(i, j)] = x
    return GradedSparseOperator(tuple(basis), tuple(levels), entries, Fraction(n))


def boson_virasoro(n: int, alpha, cutoff: int) -> GradedSparseOperator:
    """Matrix of L_n on boson states of level <= cutoff, zero mode alpha."""
    if abs(n) > cutoff:
        raise InsufficientCutoffError(f"|n|={abs(n)} exceeds cutoff {cutoff}")
    alpha = _frac(alpha)
    basis = boson_basis(cutoff)
    levels = [Fraction(sum(s)) for s in basis]
    return _build(basis, levels, cutoff, lambda s: _boson_L(n, alpha, s), n)


def fermion_virasoro(n: int, sector: str, cutoff) -> GradedSparseOperator:
    """Matrix of L_n on the NS or R fermion Fock space up to level cutoff."""
    if abs(n) > cutoff:
        raise InsufficientCutoffError(f"|n|={abs(n)} exceeds cutoff {cutoff}")
    basis = fermion_basis(sector, cutoff)
    levels = [sum(s, Fraction(0)) for s in basis]
    return _build(basis, levels, cutoff, lambda s: _fermion_L(n, sector, s), n)


@dataclass(frozen=True)
class BosonModule:
    alpha: Fraction = Fraction(0)
    central_charge = Fraction(1)

    def L(self, n, cutoff):
        return boson_virasoro(n, self.alpha, cutoff)

    def basis(self, cutoff):
        return boson_basis(cutoff)

    def metric(self, cutoff):
        return [boson_norm(s) for s in boson_basis(cutoff)]


@dataclass(frozen=True)
class FermionModule:
    sector: str = "NS"
    central_charge = Fraction(1, 2)

    def L(self, n, cutoff):
        return fermion_virasoro(n, self.sector, cutoff)

    def basis(self, cutoff):
        return fermion_basis(self.sector, cutoff)

    def metric(self, cutoff):
        return [fermion_norm(s) for s in fermion_basis(self.sector, cutoff)]


def virasoro_defect(n: int, m: int, module, cutoff) -> GradedSparseOperator:
    """[L_n, L_m] - (n-m) L_{n+m} - (c/12)(n^3-n) delta_{n+m,0}, restricted to
    source levels <= cutoff - |n| - |m| where truncation cannot leak in.
    Zero for a genuine Virasoro representation of central charge c."""
    safe = _frac(cutoff) - abs(n) - abs(m)
    if safe < 0:
        raise InsufficientCutoffError(
            f"cutoff {cutoff} leaves no room for |n|+|m|={abs(n) + abs(m)}"
        )
    Ln, Lm = module.L(n, cutoff), module.L(m, cutoff)
    comm = Ln @ Lm - Lm @ Ln
    rhs = module.L(n + m, cutoff).scale(n - m)
    if n + m == 0:
        Id = identity_operator(Ln.basis, Ln.levels)
        rhs = rhs + Id.scale(module.central_charge / 12 * (n**3 - n))
    return (comm - rhs).restrict_domain(safe)


def hermiticity_defect(n: int, module, cutoff) -> List[Tuple[int, int]]:
    """Index pairs where G L_n != (G L_{-n})^T on the safe subspace,
    G the diagonal basis metric."""
    safe = _frac(cutoff) - abs(n)
    Ln, Lmn = module.L(n, cutoff), module.L(-n, cutoff)
    G = module.metric(cutoff)
    bad = []
    levels = Ln.levels
    for i in range(Ln.dim):
        for j in range(Ln.dim):
            if levels[i] > safe or levels[j] > safe:
                continue
            a = G[i] * Ln.entries.get((i, j), 0)
            b = G[j] * Lmn.entries.get((j, i), 0)
            if a != b:
                bad.append((i, j))
    return bad


# ---------------------------------------------------------------------------
# Compact boson zero modes


def pseudovacuum_weights(e: int, m: int, r: float):
    """(h, hbar, H, P) of the pseudovacuum |e, m> at target radius r."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    a = e / r + m * r / 2
    abar = e / r - m * r / 2
    h = a * a / 2
    hbar = abar * abar / 2
    H = (e / r) ** 2 + (m * r / 2) ** 2
    return h, hbar, H, e * m


def zero_mode_charges(e: int, m: int, r: float):
    """(alpha, alphabar) = (e/r + mr/2, e/r - mr/2)."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r}")
    return e / r + m * r / 2, e / r - m * r / 2
