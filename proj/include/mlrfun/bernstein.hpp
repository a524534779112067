#ifndef MLRFUN_BERNSTEIN_HPP
#define MLRFUN_BERNSTEIN_HPP

#include "mlrfun/params.hpp"

namespace mlr {

/// Relative residual of the Laplace representation
///   F^{(n)}_{l/k,beta}(-x) = int_0^inf e^{-xy} m_{l/k,beta}(n; y) dy.
/// LHS through the defining series, RHS through quadrature over weight_eval.
/// SUB: semi-axis integral with the asymptotic tail bound.
/// CRITICAL (n = 2 only): finite interval [0, R] with singular-endpoint
/// handling; at the threshold beta = (n+1)/(2n) the measure carries a point
/// mass at y = R which is added as its e^{-Rx} term (see bernstein_atom).
/// Requires beta > l/k and, for CRITICAL, beta >= (n+1)/(2n).
double verify_bernstein(const MLRParams& params, double x, double tol);

/// Mass of the boundary atom of the critical Bernstein measure: nonzero only
/// at beta == (n+1)/(2n) exactly, computed as the x = 0 moment defect
/// 1/Gamma(beta)^n - int_0^R m dy. (Equals 1/sqrt(pi) for n = 2.)
double bernstein_atom(const MLRParams& params, double tol);

}  // namespace mlr

#endif
