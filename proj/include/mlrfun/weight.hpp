#ifndef MLRFUN_WEIGHT_HPP
#define MLRFUN_WEIGHT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "mlrfun/params.hpp"
#include "mlrfun/series.hpp"

namespace mlr {

/// One power-series coefficient of the weight m_{l/k,beta}(n; y):
/// b_r = 1 - beta + (l/k)(1+r), c_r = (-1)^r / (r! Gamma(1-b_r)^n).
struct WeightCoefficient {
    long r;
    double b_r;
    double c_r;
};

/// Radius of convergence of the weight series:
/// +inf for ln < k, (k/l)^{ln/k} for ln = k, 0 for ln > k.
double radius(const MLRParams& params);

/// Exact coefficient; c_r == 0 whenever beta - (l/k)(1+r) is a nonpositive
/// integer. Throws DomainError for the SUPER classification (radius 0).
WeightCoefficient weight_coeff(const MLRParams& params, long r);

inline constexpr long kWeightTermCap = 200000;

/// m_{l/k,beta}(n; y) for y >= 0. SUB and CRITICAL only. For CRITICAL the
/// value is exactly 0 at y >= radius. Series summed in double-double by k
/// interleaved term chains; the n=2 critical family switches to a Gauss-2F1
/// continuation near the radius, where the power series cannot reach.
SeriesValue weight_eval(const MLRParams& params, double y, double tol,
                        long term_cap = kWeightTermCap);

/// Closed form when params matches a known case, otherwise nullopt:
///   (1/2, 1,   2): 2 / (pi sqrt(4-y^2)) on [0,2), 0 beyond
///   (1/2, 1/2, 2): -2y / (pi (4-y^2)^{3/2}) on [0,2), 0 beyond
///   (1/3, 1,   2): sqrt(y)/(2 pi^{3/2}) e^{-y^3/54} K_{1/6}(y^3/54)
///   (1/4, 1,   2): (y/(4 sqrt 2)) [I_{1/4}(y^2/16) - I_{-1/4}(y^2/16)]^2
std::optional<double> weight_oracle(const MLRParams& params, double y);

/// Large-y decay shape for SUB params (unit prefactor):
/// y^{(nl - nk(beta-1/2))/(k-nl)} exp[-(k-nl)(l^{nl} y^k / k^k)^{1/(k-nl)}].
/// Truncation bounds and decay-rate tests only, never a value oracle.
double weight_asymptotic_tail(const MLRParams& params, double y);

/// Checks |m(y)| <= e^y / Gamma(beta - l/k)^n on a uniform grid over
/// [0, y_max]. Requires beta > l/k.
bool exponential_bound_check(const MLRParams& params, double y_max, int grid = 400);

struct WeightProfile {
    MLRParams params;
    std::vector<std::pair<double, double>> grid;  // (y, m), y strictly increasing
    std::vector<double> abs_err;                  // per grid point
    double radius;                                // +inf when SUB
    std::vector<std::pair<double, double>> negative_intervals;
    double tol;
};

/// Samples the weight on a uniform grid of `grid_size` points over (0, y_max]
/// (clamped below the radius for CRITICAL) and detects negative intervals,
/// bisecting each sign change to width <= 1e-3.
WeightProfile build_weight_profile(const MLRParams& params, double y_max, int grid_size,
                                   double tol);

namespace detail {

/// Largest y at which the chain summation keeps its cancellation noise below
/// noise_abs (SUB growth bound); +inf-like large for CRITICAL.
double weight_feasible_ymax(const MLRParams& params, double noise_abs);

/// Smallest y beyond which the (conservatively inflated) asymptotic tail
/// stays below `threshold`. SUB only.
double weight_tail_cutoff(const MLRParams& params, double threshold, double inflate);

/// Evaluation with the distance to the radius supplied explicitly, so the
/// caller can resolve distances far below double's gap at y = radius.
/// Only meaningful for CRITICAL params; dist = radius - y > 0.
SeriesValue weight_eval_near_radius(const MLRParams& params, double dist, double tol);

/// Refine a bracketed sign change of y -> m(y) to width <= width_tol.
double bisect_sign_change(const MLRParams& params, double y_lo, double y_hi, double tol,
                          double width_tol);

}  // namespace detail

}  // namespace mlr

#endif
