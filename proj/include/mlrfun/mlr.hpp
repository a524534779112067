#ifndef MLRFUN_MLR_HPP
#define MLRFUN_MLR_HPP

#include <span>

#include "mlrfun/params.hpp"
#include "mlrfun/series.hpp"

namespace mlr {

/// F_{l/k,beta}^{(n)}(z) = sum_r z^r / Gamma(beta + (l/k) r)^n by the
/// defining series (double-double chain summation). Reports a convergence
/// error instead of returning noise when cancellation exceeds what the
/// working precision can support.
SeriesValue mlr_series(const MLRParams& params, double z, double tol,
                       int term_cap = 10000);

/// Same function through the finite sum of k generalized hypergeometric
/// values 1F_{nl}(1; Delta(l, beta + lj/k) x n; z^k / l^{nl}).
SeriesValue mlr_hypergeom(const MLRParams& params, double z, double tol,
                          int term_cap = 10000);

/// d^j/dx^j F^{(n)}(-x) with the sign pattern factored out:
/// returns (-1)^j f^{(j)}(x), i.e. sum_m (m+j)!/m! (-x)^m rgamma(beta+alpha(m+j))^n.
SeriesValue mlr_derivative_signed(const MLRParams& params, double x, int order,
                                  double tol, int term_cap = 20000);

/// Fixed-purpose evaluator for the alpha = 1 boundary identities:
/// sum_r (-x)^r / (r!)^n (equals J0(2 sqrt x) at n = 2).
double alpha_one_series(int n, double x);

/// Relative residual of the Laplace rule
///   int_0^inf e^{-st} t^{beta-1} F^{(n)}(lambda t^alpha) dt
///     = s^{-beta} F^{(n-1)}(lambda s^{-alpha}).
/// Requires s > 0, n >= 2, lambda <= 0.
double laplace_recursion_check(const MLRParams& params, double lambda, double s,
                               double tol);

}  // namespace mlr

#endif
