#include "mlrfun/cm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlrfun/errors.hpp"
#include "mlrfun/mlr.hpp"
#include "mlrfun/weight.hpp"

namespace mlr {

namespace {

struct ScanOptions {
    bool stop_at_first_negative = false;
};

SignReport scan_impl(const MLRParams& p, double y_max, int grid, const ScanOptions& opt) {
    if (p.classification() == Classification::Super)
        throw DomainError("scan_weight_sign: radius is zero for ln > k");
    if (grid < 2) throw DomainError("scan_weight_sign: grid must be >= 2");
    if (!(y_max > 0.0)) throw DomainError("scan_weight_sign: y_max must be positive");

    double hi = y_max;
    std::string clamp;
    if (p.classification() == Classification::Critical) {
        double R = radius(p);
        double cap = (p.n == 2) ? R * (1.0 - 1e-9) : R * (1.0 - 1e-3);
        if (hi > cap) {
            hi = cap;
            clamp = "clamped to radius";
        }
    } else {
        double tail = detail::weight_tail_cutoff(p, 1e-12, 2.0);
        double feas = detail::weight_feasible_ymax(p, 0.1 * kScanTol);
        double cap = std::min({std::min(tail, feas), 50.0});
        if (hi > cap) {
            hi = cap;
            clamp = tail < feas ? "clamped to asymptotic-tail cutoff"
                                : "clamped to precision-feasible range";
        }
    }

    SignReport rep{p,  y_max, hi, grid, std::numeric_limits<double>::infinity(),
                   0., {},    SignVerdict::Nonnegative, 0, clamp};

    // geometric prefix resolves sign structure at y -> 0+ (scan_range excludes 0)
    std::vector<double> ys;
    for (double f = 1e-8; f < 1.0 / grid; f *= 4.0) ys.push_back(hi * f);
    for (int i = 1; i <= grid; ++i) ys.push_back(hi * i / grid);

    const double tol = kScanTol;
    double noise_floor = 1e-20;
    double prev_y = ys.front();
    double prev_m = 0.0;
    bool have_prev = false;
    bool in_neg = false;
    double neg_start = 0.0;
    bool neg_confirmed = false;
    for (double y : ys) {
        double m;
        try {
            SeriesValue sv = weight_eval(p, y, 1e-12);
            m = sv.value;
            noise_floor = std::max(noise_floor, 2.0 * sv.abs_error_estimate);
        } catch (const ConvergenceError&) {
            ++rep.excluded_points;
            continue;
        }
        if (m < rep.min_value) {
            rep.min_value = m;
            rep.min_at = y;
        }
        bool neg = m < -tol;
        if (neg) neg_confirmed = true;
        if (have_prev) {
            if (neg && !in_neg) {
                neg_start = (prev_m < 0.0)
                                ? prev_y
                                : detail::bisect_sign_change(p, prev_y, y, tol, 1e-3);
                in_neg = true;
            } else if (!neg && in_neg && m > tol) {
                rep.negative_intervals.emplace_back(
                    neg_start, detail::bisect_sign_change(p, prev_y, y, tol, 1e-3));
                in_neg = false;
            }
        } else if (neg) {
            in_neg = true;
            neg_start = y;
        }
        prev_y = y;
        prev_m = m;
        have_prev = true;
        if (neg_confirmed && opt.stop_at_first_negative) {
            if (in_neg) rep.negative_intervals.emplace_back(neg_start, y);
            rep.verdict = SignVerdict::NegativeFound;
            return rep;
        }
    }
    if (in_neg) rep.negative_intervals.emplace_back(neg_start, prev_y);

    // negatives inside the evaluators' own noise floor count as zero
    double zero_band = std::min(noise_floor, tol / 4.0);
    if (rep.excluded_points > (static_cast<long>(ys.size())) / 100) {
        rep.verdict = SignVerdict::Inconclusive;
    } else if (neg_confirmed) {
        rep.verdict = SignVerdict::NegativeFound;
    } else if (rep.min_value < -zero_band) {
        rep.verdict = SignVerdict::Inconclusive;
    } else {
        rep.verdict = SignVerdict::Nonnegative;
    }
    return rep;
}

}  // namespace

double supermajorization_bound(int n) {
    if (n < 1) throw DomainError("supermajorization_bound: n >= 1");
    return (n + 1.0) / (2.0 * n);
}

bool supermajorization_check(int n, double beta) {
    if (n < 1) throw DomainError("supermajorization_check: n >= 1");
    for (int N = 1; N <= n; ++N) {
        // sum_{i=1..N} i/n <= N beta  <=>  N(N+1)/(2n) <= N beta
        if (static_cast<double>(N) * (N + 1) / (2.0 * n) > N * beta + 1e-15) return false;
    }
    return true;
}

SignReport scan_weight_sign(const MLRParams& p, double y_max, int grid) {
    return scan_impl(p, y_max, grid, {});
}

BoundSample cm_bound_search(int n, RationalOrder alpha, double beta_lo, double beta_hi,
                            double beta_tol, int scan_grid) {
    if (n < 1) throw DomainError("cm_bound_search: n >= 1");
    if (static_cast<double>(alpha.l()) * n >= alpha.k())
        throw BracketError("cm_bound_search: requires alpha < 1/n strictly");
    if (!(beta_tol > 0.0) || !(beta_hi > beta_lo))
        throw DomainError("cm_bound_search: invalid bracket or tolerance");

    const double y_max = 50.0;  // scan_impl clamps to tail/precision range
    auto scan_at = [&](double beta, bool early) {
        MLRParams p{alpha, beta, n};
        ScanOptions opt;
        opt.stop_at_first_negative = early;
        SignReport r = scan_impl(p, y_max, scan_grid, opt);
        if (r.verdict == SignVerdict::Inconclusive)
            throw ConvergenceError("cm_bound_search: inconclusive scan at beta = " +
                                   std::to_string(beta));
        return r;
    };

    SignReport lo = scan_at(beta_lo, true);
    if (lo.verdict != SignVerdict::NegativeFound)
        throw BracketError("cm_bound_search: no negativity at beta_lo = " +
                           std::to_string(beta_lo));
    SignReport hi = scan_at(beta_hi, false);
    if (hi.verdict != SignVerdict::Nonnegative)
        throw BracketError("cm_bound_search: beta_hi = " + std::to_string(beta_hi) +
                           " is not nonnegative");

    BoundSample out{alpha, 0.0, beta_lo, lo.min_at, lo.min_value, beta_hi, hi.min_value};
    double a = beta_lo, b = beta_hi;
    while (b - a > beta_tol) {
        double mid = 0.5 * (a + b);
        SignReport r = scan_at(mid, true);
        if (r.verdict == SignVerdict::NegativeFound) {
            a = mid;
            out.beta_neg = mid;
            out.neg_witness_y = r.min_at;
            out.neg_witness_m = r.min_value;
        } else {
            b = mid;
            out.beta_pos = mid;
            out.pos_min_value = r.min_value;
        }
    }
    out.M = 0.5 * (a + b);
    return out;
}

bool cm_derivative_check(const MLRParams& p, std::span<const double> x_grid, int max_order) {
    if (max_order > 8)
        throw DomainError("cm_derivative_check: max_order <= 8");
    for (double x : x_grid) {
        if (!(x > 0.0)) throw DomainError("cm_derivative_check: grid must be positive");
        for (int j = 0; j <= max_order; ++j) {
            // high orders at the large-x end cancel heavily; a violation must
            // clear the evaluation's own noise band to count, and a point whose
            // sign cannot be resolved at all is skipped rather than guessed
            SeriesValue v;
            try {
                v = mlr_derivative_signed(p, x, j, 1e-3);
            } catch (const ConvergenceError&) {
                continue;
            }
            if (v.value < -std::max(kScanTol, 2.0 * v.abs_error_estimate)) return false;
        }
    }
    return true;
}

bool cm_derivative_check_fd(const MLRParams& p, std::span<const double> x_grid,
                            int max_order) {
    if (max_order > 3)
        throw DomainError("cm_derivative_check_fd: finite differences support order <= 3");
    const double h = 1e-4;
    auto F = [&](double x) { return mlr_series(p, -x, 1e-13).value; };
    for (double x : x_grid) {
        for (int j = 1; j <= max_order; ++j) {
            double d;
            if (j == 1) {
                d = (F(x + h) - F(x - h)) / (2 * h);
            } else if (j == 2) {
                d = (F(x + h) - 2 * F(x) + F(x - h)) / (h * h);
            } else {
                d = (F(x + 2 * h) - 2 * F(x + h) + 2 * F(x - h) - F(x - 2 * h)) /
                    (2 * h * h * h);
            }
            double signed_d = (j % 2) ? -d : d;
            if (signed_d < -1e-5) return false;  // fd noise floor
        }
    }
    return true;
}

}  // namespace mlr
