"""Exact and numerical tools for two-dimensional conformal field theory:
q-series and modular forms, Virasoro representation theory, Fock-space
realizations, torus partition functions, plane correlators, fusion rules
and genus-zero Gromov-Witten invariants."""

from .errors import (
    CFTError,
    DegenerateConfigurationError,
    DomainError,
    InsufficientCutoffError,
    InsufficientOrderError,
    InvalidModelError,
    InvalidOrderError,
    OutOfTableError,
    ShapeError,
    SingularParameterError,
)
from .qseries import FractionalQSeries, TorusPoint, eta_eval, eta_qexp, partition_count, theta_eval
from .virasoro import VirasoroParams, gram_matrix, irreducible_character, kac_determinant_closed, null_vectors

__version__ = "0.1.0"
