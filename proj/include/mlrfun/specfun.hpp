#ifndef MLRFUN_SPECFUN_HPP
#define MLRFUN_SPECFUN_HPP

#include <span>
#include <vector>

#include "mlrfun/dd.hpp"
#include "mlrfun/series.hpp"

namespace mlr {

/// Gamma(x). Lanczos on the positive axis, reflection for negative
/// non-integer x. Throws DomainError at the poles x = 0, -1, -2, ...
double gamma(double x);

/// 1/Gamma(x) as an entire function: exactly 0 at nonpositive integers.
double reciprocal_gamma(double x);

/// sin(pi x) with exact argument reduction (no pi-rounding drift at integers).
double sin_pi(double x);

/// Rising factorial (c)_r = c (c+1) ... (c+r-1); (c)_0 = 1.
double pochhammer(double c, int r);

/// (beta + (l/k) j)_{l r} evaluated through the multiplication-index
/// reduction: l^{rl} * prod_{i=0}^{l-1} ((beta + lj/k + i)/l)_r.
double pochhammer_split(double beta, int j, int l, int k, int r);

inline constexpr int kDefaultTermCap = 10000;

/// Generalized hypergeometric series pFq(upper; lower; z).
/// Running-term recurrence with compensated (double-double) accumulation.
/// Stops once |term| < tol*|sum| for two consecutive terms.
/// Throws DomainError if a lower parameter is a nonpositive integer,
/// ConvergenceError on divergence (p > q+1, or p == q+1 with |z| >= 1)
/// or when term_cap is exceeded.
SeriesValue pfq(std::span<const double> upper, std::span<const double> lower, double z,
                double tol, int term_cap = kDefaultTermCap);

/// Modified Bessel I_nu(x) by its ascending series, x >= 0 (x > 0 if nu < 0).
double bessel_i(double nu, double x);

/// Modified Bessel K_nu(x) for noninteger nu via pi (I_{-nu} - I_nu) / (2 sin nu pi),
/// x > 0. Integer nu is rejected (DomainError), not computed as a limit.
double bessel_k(double nu, double x);

/// J0(2 sqrt(x)) = sum (-x)^r / (r!)^2 for x >= 0.
double bessel_j0_of(double x);

namespace detail {

/// pfq core at full double-double width, for callers that combine several
/// hypergeometric values with cancellation between them.
struct PfqValue {
    dd value;
    double sum_abs;
    double max_abs;
    double tail_abs;  // |last| + |previous| term magnitudes
    long terms;
};

PfqValue pfq_dd(std::span<const dd> upper, std::span<const dd> lower, double z,
                double stop_tol, int term_cap);

}  // namespace detail

}  // namespace mlr

#endif
