"""Mittag-Leffler functions of Le Roy type.

Thin wrapper re-exporting the compiled extension. The heavy lifting
(double-double series, tanh-sinh quadrature, CM boundary search) lives in C++.
"""

from ._mlrfun import (  # noqa: F401
    ConvergenceError,
    DomainError,
    MLRParams,
    SeriesValue,
    __version__,
    alpha_one_series,
    bessel_i,
    bessel_j0_of,
    bessel_k,
    cm_bound_search,
    cm_derivative_check,
    gamma,
    laplace_recursion_check,
    mlr_hypergeom,
    mlr_series,
    pfq,
    pochhammer,
    pochhammer_split,
    radius,
    reciprocal_gamma,
    scan_weight_sign,
    supermajorization_bound,
    supermajorization_check,
    verify_bernstein,
    weight_eval,
    weight_oracle,
)
