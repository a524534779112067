#include "mlrfun/mlr.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mlrfun/dd.hpp"
#include "mlrfun/errors.hpp"
#include "mlrfun/quadrature.hpp"
#include "mlrfun/specfun.hpp"

namespace mlr {

namespace {

constexpr double kEpsDD = 4.93e-32;

// F-type chain sum: sum_m g_j(m) z^m rgamma(beta + (l/k)(m+shift))^n, where
// the per-chain step over m -> m+k multiplies by an exact rational factor.
// Used for the series itself (shift=0, g=1) and for signed derivatives
// (shift=j, g(m) = (m+j)!/m!). `tol` drives both the stopping rule and the
// honest-refusal threshold on cancellation.
SeriesValue mlr_chains(const MLRParams& p, double z, int shift, double tol, int cap) {
    const long l = p.alpha.l(), k = p.alpha.k();
    const int n = p.n;
    const dd beta(p.beta);
    const dd lk = dd(static_cast<double>(l)) / dd(static_cast<double>(k));

    auto x_of = [&](long m) {
        return beta + dd(static_cast<double>(l) * (m + shift)) / dd(static_cast<double>(k));
    };

    // seeds m = 0..k-1:  g(m) z^m rgamma(x_m)^n, g(m) = (m+shift)!/m!
    std::vector<dd> t(k);
    dd zpow(1.0);
    for (long j = 0; j < k; ++j) {
        if (j > 0) zpow = zpow * z;
        dd g(1.0);
        for (int i = 1; i <= shift; ++i) g = g * static_cast<double>(j + i);
        t[j] = g * zpow * powi(dd_rgamma(x_of(j)), n);
    }
    dd zk = powi(dd(z), k);

    dd sum(0.0);
    double sum_abs = 0.0, max_abs = 0.0, last_abs = 0.0, prev_abs = 0.0;
    int consecutive_small = 0;
    const double stop_tol = std::min(tol, 1e-16);
    long m = 0;
    for (; m < cap; ++m) {
        long j = m % k;
        dd term = t[j];
        sum += term;
        double ta = std::fabs(to_double(term));
        if (!std::isfinite(ta))
            throw ConvergenceError("mlr_series: term overflow (|z| too large for direct summation)");
        sum_abs += ta;
        if (ta > max_abs) max_abs = ta;
        prev_abs = last_abs;
        last_abs = ta;
        if (m >= 2 * k && ta < stop_tol * std::max(std::fabs(to_double(sum)), 1e-300)) {
            if (++consecutive_small >= 2 * static_cast<int>(k)) { ++m; break; }
        } else {
            consecutive_small = 0;
        }
        // chain step m -> m+k: rgamma(x+l) = rgamma(x)/prod_{i=0..l-1}(x+i);
        // derivative weight g(m+k)/g(m) = prod_{i=1..shift}(m+k+i)/(m+i)
        dd x = x_of(m);
        dd f = zk;
        for (long i = 0; i < l; ++i) f = f / powi(x + static_cast<double>(i), n);
        for (int i = 1; i <= shift; ++i)
            f = f * dd(static_cast<double>(m + k + i)) / dd(static_cast<double>(m + i));
        t[j] = term * f;
    }
    double value = to_double(sum);
    if (consecutive_small < 2 * static_cast<int>(k))
        throw ConvergenceError("mlr_series: no convergence within " + std::to_string(cap) +
                               " terms");
    double cancel_noise = 16.0 * kEpsDD * sum_abs;
    if (cancel_noise > tol * std::max(1.0, std::fabs(value)))
        throw ConvergenceError(
            "mlr_series: cancellation exceeds working precision for the requested tolerance "
            "(condition " +
            std::to_string(sum_abs / std::max(std::fabs(value), 1e-300)) + ")");
    SeriesValue out;
    out.value = value;
    out.terms_used = m;
    out.abs_error_estimate = last_abs + prev_abs + cancel_noise;
    out.converged = out.abs_error_estimate <= tol * std::max(1.0, std::fabs(value));
    return out;
}

}  // namespace

SeriesValue mlr_series(const MLRParams& p, double z, double tol, int term_cap) {
    if (z == 0.0) {
        double v = std::pow(reciprocal_gamma(p.beta), p.n);
        return {v, std::fabs(v) * 1e-15, 1, true};
    }
    return mlr_chains(p, z, 0, tol, term_cap);
}

SeriesValue mlr_hypergeom(const MLRParams& p, double z, double tol, int term_cap) {
    const long l = p.alpha.l(), k = p.alpha.k();
    const int n = p.n;
    const double arg = std::pow(z, static_cast<double>(k)) /
                       std::pow(static_cast<double>(l), static_cast<double>(n) * l);
    std::vector<dd> upper{dd(1.0)};
    dd total(0.0);
    double sum_abs = 0.0;
    double err = 0.0;
    long terms = 0;
    // the k j-terms can cancel at a scale far above the result, so the
    // combination (and the parameter arithmetic feeding pfq) stays in
    // double-double end to end
    dd beta_dd(p.beta);
    dd lk = dd(static_cast<double>(l)) / dd(static_cast<double>(k));
    dd zj(1.0);
    for (long j = 0; j < k; ++j) {
        if (j > 0) zj = zj * z;
        dd bj_dd = beta_dd + lk * static_cast<double>(j);
        dd coef = powi(dd_rgamma(bj_dd), n);
        if (coef.hi != 0.0) {
            std::vector<dd> lower;
            lower.reserve(static_cast<std::size_t>(n) * l);
            for (int rep = 0; rep < n; ++rep)
                for (long i = 0; i < l; ++i)
                    lower.push_back((bj_dd + static_cast<double>(i)) /
                                    dd(static_cast<double>(l)));
            auto hv = detail::pfq_dd(upper, lower, arg, 1e-18, term_cap);
            dd contrib = zj * coef * hv.value;
            total += contrib;
            double scale = std::fabs(to_double(zj * coef));
            sum_abs += scale * hv.sum_abs;
            err += scale * hv.tail_abs;
            terms += hv.terms;
        }
    }
    SeriesValue out;
    out.value = to_double(total);
    out.abs_error_estimate = err + 16.0 * kEpsDD * sum_abs;
    out.terms_used = terms;
    out.converged = out.abs_error_estimate <= tol * std::max(1.0, std::fabs(out.value));
    if (!out.converged)
        throw ConvergenceError(
            "mlr_hypergeom: cancellation between hypergeometric terms exceeds working "
            "precision for the requested tolerance");
    return out;
}

SeriesValue mlr_derivative_signed(const MLRParams& p, double x, int order, double tol,
                                  int term_cap) {
    if (order < 0 || order > 8)
        throw DomainError("mlr_derivative_signed: order must be in [0, 8]");
    if (x == 0.0 && order == 0) return mlr_series(p, 0.0, tol);
    return mlr_chains(p, -x, order, tol, term_cap);
}

double alpha_one_series(int n, double x) {
    if (n < 1) throw DomainError("alpha_one_series: n >= 1");
    dd sum(1.0), term(1.0);
    for (int r = 0; r < 5000; ++r) {
        term = term * (-x) / powi(dd(static_cast<double>(r + 1)), n);
        sum += term;
        if (std::fabs(to_double(term)) < 1e-25 * std::max(1.0, std::fabs(to_double(sum))) &&
            r > 2)
            break;
    }
    return to_double(sum);
}

double laplace_recursion_check(const MLRParams& p, double lambda, double s, double tol) {
    if (!(s > 0.0)) throw DomainError("laplace_recursion_check: requires s > 0");
    if (p.n < 2)
        throw DomainError("laplace_recursion_check: n >= 2 (recursion bottoms out at n = 1)");
    if (lambda > 0.0)
        throw DomainError("laplace_recursion_check: requires lambda <= 0");

    const double alpha = p.alpha.value();
    const double beta = p.beta;
    const double series_tol = std::min(1e-12, tol * 1e-2);

    // |F| envelope over the integration range, refreshed lazily
    double f_max = std::fabs(mlr_series(p, 0.0, series_tol).value);
    for (double t : {0.5, 2.0, 8.0, 32.0}) {
        double v = std::fabs(mlr_series(p, lambda * std::pow(t, alpha), series_tol).value);
        f_max = std::max(f_max, v);
    }

    auto integrand = [&](double t) {
        if (t <= 0.0) return 0.0;
        double F = mlr_series(p, lambda * std::pow(t, alpha), series_tol).value;
        return std::exp(-s * t) * std::pow(t, beta - 1.0) * F;
    };
    auto bound = [&](double t) {
        return 2.0 * f_max * std::exp(-s * t) * std::pow(t, std::max(beta - 1.0, 0.0));
    };
    QuadratureResult lhs = integrate_semiaxis(integrand, bound, tol * 0.1);

    MLRParams lower{p.alpha, p.beta, p.n - 1};
    double rhs = std::pow(s, -beta) *
                 mlr_series(lower, lambda * std::pow(s, -alpha), series_tol).value;
    return std::fabs(lhs.value - rhs) / std::max(1.0, std::fabs(rhs));
}

}  // namespace mlr
