#ifndef MLRFUN_QUADRATURE_HPP
#define MLRFUN_QUADRATURE_HPP

#include <functional>
#include <string>

namespace mlr {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long evaluations = 0;
    std::string segments;  // how the domain was split / truncated
};

/// Integrand point for finite-interval rules: y plus its distances to the
/// interval endpoints, resolved beyond double's gap so integrable endpoint
/// singularities can be evaluated stably.
struct QuadPoint {
    double y;
    double dist_lo;  // y - a
    double dist_hi;  // b - y
};

/// Tanh-sinh (double-exponential) quadrature over [a, b]. Handles integrable
/// endpoint singularities; f receives the endpoint distances explicitly.
QuadratureResult integrate_finite(const std::function<double(const QuadPoint&)>& f,
                                  double a, double b, double tol);

/// Integral over [0, inf): tanh-sinh on [0, Y*] where Y* is chosen so the
/// tail of decay_bound (which must eventually dominate |f|) integrates to
/// < tol/2, then verified by extending Y* once.
QuadratureResult integrate_semiaxis(const std::function<double(double)>& f,
                                    const std::function<double(double)>& decay_bound,
                                    double tol);

}  // namespace mlr

#endif
