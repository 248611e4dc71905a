"""Fusion rules: su(2) at level k, its modular S-matrix and Verlinde
dimensions, and the Phi_{1,2} / Phi_{2,1} rules of minimal models."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .errors import DomainError, OutOfTableError
from .virasoro import _check_label, canonical_label


def _check_level(k: int):
    if not (isinstance(k, (int, np.integer)) and k >= 1):
        raise DomainError(f"level k must be a positive integer, got {k}")


def _check_weights(k: int, weights: Sequence[int]):
    _check_level(k)
    for lam in weights:
        if not (0 <= lam <= k) or int(lam) != lam:
            raise OutOfTableError(f"weight {lam} is not integrable at level {k}")


def su2_fusion_admissible(l1: int, l2: int, l3: int, k: int) -> bool:
    """Quantum Clebsch-Gordan conditions: even sum, triangle inequality, and
    l1 + l2 + l3 <= 2k."""
    _check_weights(k, (l1, l2, l3))
    s = l1 + l2 + l3
    return s % 2 == 0 and abs(l1 - l2) <= l3 <= l1 + l2 and s <= 2 * k


def s_matrix(k: int) -> np.ndarray:
    """S_{lm} = sqrt(2/(k+2)) sin(pi (l+1)(m+1)/(k+2)), 0 <= l, m <= k."""
    _check_level(k)
    idx = np.arange(1, k + 2)
    return np.sqrt(2 / (k + 2)) * np.sin(np.pi * np.outer(idx, idx) / (k + 2))


@dataclass(frozen=True)
class VerlindeResult:
    value: float
    nearest: int
    residual: float


def verlinde_dim(k: int, genus: int, weights: Sequence[int]) -> VerlindeResult:
    """sum_l S_{0l}^{2-2g-n} prod_i S_{l_i l}: dimension of the space of
    conformal blocks on a genus-g surface with n marked points."""
    _check_weights(k, weights)
    if not (isinstance(genus, (int, np.integer)) and genus >= 0):
        raise DomainError(f"genus must be a nonnegative integer, got {genus}")
    S = s_matrix(k)
    power = 2 - 2 * genus - len(weights)
    terms = S[0] ** power
    for lam in weights:
        terms = terms * S[lam]
    value = float(np.sum(terms))
    nearest = int(round(value))
    return VerlindeResult(value, nearest, abs(value - nearest))


def verlinde_three_point(l1: int, l2: int, l3: int, k: int) -> float:
    """sum_l S_{l1 l} S_{l2 l} S_{l3 l} / S_{0 l}."""
    return verlinde_dim(k, 0, (l1, l2, l3)).value


def minimal_fuse(generator: str, p: int, q: int, P: int, Q: int) -> List[Tuple[int, int]]:
    """Classes in [generator] x [Phi_{p,q}] for M(P, Q).

    Phi12 shifts q by +-1, Phi21 shifts p by +-1, Phi11 is the identity.
    Labels leaving the Kac table are dropped; survivors are folded to their
    canonical representative under (p,q) ~ (P-p, Q-q) and deduplicated."""
    _check_label(P, Q, p, q)
    if generator == "Phi12":
        cands = [(p, q - 1), (p, q + 1)]
    elif generator == "Phi21":
        cands = [(p - 1, q), (p + 1, q)]
    elif generator == "Phi11":
        cands = [(p, q)]
    else:
        raise DomainError(f"generator must be Phi11, Phi12 or Phi21, got {generator!r}")
    out = []
    for a, b in cands:
        if 1 <= a <= P - 1 and 1 <= b <= Q - 1:
            lab = canonical_label(P, Q, a, b)
            if lab not in out:
                out.append(lab)
    return sorted(out)
