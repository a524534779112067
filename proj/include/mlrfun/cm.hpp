#ifndef MLRFUN_CM_HPP
#define MLRFUN_CM_HPP

#include <span>
#include <utility>
#include <vector>

#include "mlrfun/params.hpp"

namespace mlr {

/// The weak-supermajorization sufficient bound (n+1)/(2n) for
/// nonnegativity of m_{1/n,beta}(n; y).
double supermajorization_bound(int n);

/// Directly checks the N = 1..n partial-sum inequalities
/// sum_{i=1..N} i/n <= N beta.
bool supermajorization_check(int n, double beta);

enum class SignVerdict { Nonnegative, NegativeFound, Inconclusive };

inline const char* to_string(SignVerdict v) {
    switch (v) {
        case SignVerdict::Nonnegative: return "NONNEGATIVE";
        case SignVerdict::NegativeFound: return "NEGATIVE_FOUND";
        default: return "INCONCLUSIVE";
    }
}

struct SignReport {
    MLRParams params;
    double y_max_requested;
    double y_max_scanned;  // after tail / precision clamping
    int grid_size;
    double min_value;
    double min_at;
    std::vector<std::pair<double, double>> negative_intervals;
    SignVerdict verdict;
    long excluded_points;  // evaluation failures
    std::string clamp_reason;
};

inline constexpr double kScanTol = 1e-10;

/// Scans weight_eval over (0, y_max], bisecting sign changes to width 1e-3.
/// NEGATIVE_FOUND iff some value < -1e-10; INCONCLUSIVE when the minimum
/// lies in [-1e-10, 0) or too many points failed to evaluate.
SignReport scan_weight_sign(const MLRParams& params, double y_max, int grid = 2000);

struct BoundSample {
    RationalOrder alpha;
    double M;
    // bracket certificate
    double beta_neg;       // scan found negativity here
    double neg_witness_y;  // a y with m < -kScanTol at beta_neg
    double neg_witness_m;
    double beta_pos;       // scan found nonnegativity here
    double pos_min_value;
};

/// Bisection on beta for the minimal value M_n(alpha) with m >= 0 for
/// beta >= M. Requires alpha < 1/n strictly, scan(beta_lo) NEGATIVE_FOUND
/// and scan(beta_hi) NONNEGATIVE (BracketError otherwise).
BoundSample cm_bound_search(int n, RationalOrder alpha, double beta_lo, double beta_hi,
                            double beta_tol, int scan_grid = 600);

struct CMBoundaryCurve {
    int n;
    std::vector<BoundSample> samples;
    double beta_tol;
};

/// Term-wise-differentiated complete-monotonicity check:
/// (-1)^j d^j/dx^j F^{(n)}(-x) >= -1e-10 on the grid for j = 0..max_order.
bool cm_derivative_check(const MLRParams& params, std::span<const double> x_grid,
                         int max_order);

/// Secondary cross-check by central finite differences (step 1e-4),
/// orders 1..max_order with max_order <= 3.
bool cm_derivative_check_fd(const MLRParams& params, std::span<const double> x_grid,
                            int max_order);

}  // namespace mlr

#endif
