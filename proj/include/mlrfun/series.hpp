#ifndef MLRFUN_SERIES_HPP
#define MLRFUN_SERIES_HPP

namespace mlr {

/// A numeric series result with a conservative truncation-error estimate.
/// converged == true implies abs_error_estimate <= tol * max(1, |value|)
/// for the tolerance the evaluation was asked for.
struct SeriesValue {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    long terms_used = 0;
    bool converged = false;
};

}  // namespace mlr

#endif
