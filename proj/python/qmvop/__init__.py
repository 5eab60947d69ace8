"""Matrix-valued q-orthogonal polynomials of Askey-Wilson type.

Spins are passed as the integer two_ell = 2l. Matrices come back as numpy arrays.
Set QMVOP_PRECISION=extended, or pass precision="extended", to evaluate in 50-digit arithmetic.
"""

from ._qmvop import (
    ArgumentError,
    ConsistencyError,
    DomainError,
    PoleError,
    check_ids,
    cont_q_ultra,
    default_tolerances,
    families,
    full_spherical,
    lambda_matrix,
    ldu,
    norm,
    orthogonality_matrix,
    poly,
    poly_explicit,
    recurrence,
    run_suite,
    weight,
)

__all__ = [
    "ArgumentError",
    "ConsistencyError",
    "DomainError",
    "PoleError",
    "check_ids",
    "cont_q_ultra",
    "default_tolerances",
    "families",
    "full_spherical",
    "lambda_matrix",
    "ldu",
    "norm",
    "orthogonality_matrix",
    "poly",
    "poly_explicit",
    "recurrence",
    "run_suite",
    "weight",
]
