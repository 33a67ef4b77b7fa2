"""Gamma, zeta and the Dirichlet L-function mod 4, and the symmetric product A(s)."""

from .afunction import A, ARoute, harmonic_sum_H, residue_at_one, zeta_via_theorem1
from .core import (
    DEFAULT_PRECISION,
    ComplexPoint,
    DivisionNearZeroError,
    DomainError,
    EvalResult,
    NonConvergenceError,
    PoleError,
    Precision,
    RemovableSingularityError,
    ZetaBetaError,
    parse_complex,
)
from .identity_lab import CheckReport, GridSpec, PointCheck, tschebyschef_F
from .special_functions import beta_L, eta, gamma, primes_up_to, theta4_deficit, zeta

__all__ = [
    "A",
    "ARoute",
    "CheckReport",
    "ComplexPoint",
    "DEFAULT_PRECISION",
    "DivisionNearZeroError",
    "DomainError",
    "EvalResult",
    "GridSpec",
    "NonConvergenceError",
    "PointCheck",
    "PoleError",
    "Precision",
    "RemovableSingularityError",
    "ZetaBetaError",
    "beta_L",
    "eta",
    "gamma",
    "harmonic_sum_H",
    "parse_complex",
    "primes_up_to",
    "residue_at_one",
    "theta4_deficit",
    "tschebyschef_F",
    "zeta",
    "zeta_via_theorem1",
]
