"""Exception types raised across the package.

All of them derive from ``ValueError`` so callers that only care about
"bad input" can catch that.
"""


class CFTError(ValueError):
    """Base class for domain errors in cftkit."""


class DomainError(CFTError):
    """Argument outside the mathematical domain (e.g. Im tau <= 0, r <= 0)."""


class InvalidOrderError(CFTError):
    """Requested q-series truncation order is too small to hold any term."""


class InsufficientOrderError(CFTError):
    """Truncated series cannot reach the requested numerical tolerance."""


class SingularParameterError(CFTError):
    """Kac parameter m in {0, -1}, where the weight formula is singular."""


class InvalidModelError(CFTError):
    """(P, Q) does not label a minimal model."""


class OutOfTableError(CFTError):
    """Label (p, q) or an su(2) weight lies outside its admissible range."""


class ShapeError(CFTError):
    """Matrix has the wrong shape or symmetry."""


class DegenerateConfigurationError(CFTError):
    """Coincident insertion points or a degenerate cross-ratio."""


class InsufficientCutoffError(CFTError):
    """Fock-space level cutoff too small for the requested check."""
