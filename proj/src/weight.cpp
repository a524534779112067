#include "mlrfun/weight.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlrfun/dd.hpp"
#include "mlrfun/detail/hyp2f1.hpp"
#include "mlrfun/errors.hpp"
#include "mlrfun/specfun.hpp"

namespace mlr {

namespace {

constexpr double kEpsDD = 4.93e-32;  // 2^-104

// Exact pole test for x_r = beta - l(1+r)/k: nonpositive integer iff
// t = beta*k - l(1+r) is a nonpositive multiple of k (exact when beta*k is).
bool coeff_is_pole(double beta, long l, long k, long r) {
    double t = beta * static_cast<double>(k) - static_cast<double>(l) * (1.0 + r);
    if (t != std::floor(t)) return false;
    if (t > 0.0) return false;
    return std::fmod(t, static_cast<double>(k)) == 0.0;
}

struct ChainSum {
    dd value;
    double max_abs = 0.0;
    double last_abs = 0.0;
    long terms = 0;
    bool converged = false;
};

// Sum m(y) = sum_r c_r y^r by k interleaved chains with the exact step
// t_{r+k} = t_r * (-1)^k y^k prod_{i=1..l}(x_r - i)^n / prod_{i=1..k}(r+i).
ChainSum weight_chains(const MLRParams& p, double y, double tol, long cap) {
    const long l = p.alpha.l(), k = p.alpha.k();
    const int n = p.n;
    const dd beta(p.beta);

    std::vector<dd> t(k);
    dd ypow(1.0);
    dd fact(1.0);
    for (long j = 0; j < k; ++j) {
        if (j > 0) {
            ypow = ypow * y;
            fact = fact * static_cast<double>(j);
        }
        if (coeff_is_pole(p.beta, l, k, j)) {
            t[j] = dd(0.0);
        } else {
            dd x = beta - dd(static_cast<double>(l) * (1.0 + j)) / dd(static_cast<double>(k));
            dd rg = powi(dd_rgamma(x), n);
            t[j] = ((j % 2) ? -1.0 : 1.0) * rg / fact * ypow;
        }
    }

    dd yk = powi(dd(y), k);
    if (k % 2) yk = -yk;

    ChainSum out;
    dd sum(0.0);
    int consecutive_small = 0;
    long r = 0;
    for (; r < cap; ++r) {
        long j = r % k;
        dd term = t[j];
        sum += term;
        double ta = std::fabs(to_double(term));
        if (!std::isfinite(ta))
            throw ConvergenceError("weight_eval: term overflow (y beyond evaluable range)");
        if (ta > out.max_abs) out.max_abs = ta;
        out.last_abs = ta;
        if (r >= 2 * k && ta < tol * std::max(std::fabs(to_double(sum)), 1e-300)) {
            if (++consecutive_small >= 2 * static_cast<int>(k)) { ++r; break; }
        } else {
            consecutive_small = 0;
        }
        // advance chain j by k
        dd x = beta - dd(static_cast<double>(l) * (1.0 + r)) / dd(static_cast<double>(k));
        dd f = yk;
        for (long i = 1; i <= l; ++i) f = f * powi(x - static_cast<double>(i), n);
        for (long i = 1; i <= k; ++i) f = f / dd(static_cast<double>(r + i));
        t[j] = term * f;
    }
    out.value = sum;
    out.terms = r;
    out.converged = consecutive_small >= 2 * static_cast<int>(k);
    return out;
}

double critical_threshold(int n) { return (n + 1.0) / (2.0 * n); }

// n=2 critical family: m = rg(b-1/2)^2 F(3/2-b,3/2-b;1/2;z)
//                        - y rg(b-1)^2 F(2-b,2-b;3/2;z),  z = y^2/4.
// Near the radius the 2F1s go through the z->1 connection; at the threshold
// beta = 3/4 the two w^{-1} parts cancel exactly and are combined analytically.
dd critical2_near_radius(double beta, double dist, double* abs_err) {
    const dd d(dist);
    const dd w = d * (4.0 - d) / 4.0;  // 1 - y^2/4, stable for tiny dist
    const dd y = 2.0 - d;
    const dd b(beta);
    const dd rg_e = dd_rgamma(b - 0.5);
    const dd rg_o = dd_rgamma(b - 1.0);

    if (beta == 0.75) {
        // Euler-transformed inner series have parameter difference +1; the
        // 1/w terms cancel (rg_e^2 K_e == 2 rg_o^2 K_o symbolically).
        auto log_series = [&](const dd& a, const dd& c) {
            // G(w) = K + w*L(w) with F(a,a;c;1-w), c - 2a = 1
            dd K = dd_gamma_signed(c) * dd_rgamma(a + 1.0) * dd_rgamma(a + 1.0);
            dd logw = dd_log(w);
            dd coef = dd_gamma_signed(c) * dd_rgamma(a) * dd_rgamma(a);
            dd am = a + 1.0;
            dd psi_a = dd_digamma(am);
            dd psi1 = dd_digamma(dd(1.0)), psi2 = dd_digamma(dd(2.0));
            dd run(1.0);  // (am)_n^2 / (n!(n+1)!)
            dd L(0.0);
            for (int nn = 0; nn < 500; ++nn) {
                dd term = run * (logw - psi1 - psi2 + 2.0 * psi_a);
                L += term;
                if (std::fabs(term.hi) < 1e-34 * std::max(1.0, std::fabs(L.hi)) && nn > 2) break;
                dd m(static_cast<double>(nn));
                run = run * (am + m) * (am + m) / ((m + 1.0) * (m + 2.0)) * w;
                psi1 += 1.0 / (m + 1.0);
                psi2 += 1.0 / (m + 2.0);
                psi_a += 1.0 / (am + m);
            }
            return std::pair<dd, dd>(K, coef * L);
        };
        auto [K_e, L_e] = log_series(b - 1.0, dd(0.5));
        auto [K_o, L_o] = log_series(b - 0.5, dd(1.5));
        dd atom_coeff = rg_o * rg_o * K_o;
        dd m = (d / w) * atom_coeff + rg_e * rg_e * L_e - y * (rg_o * rg_o * L_o);
        if (abs_err) *abs_err = 1e-28 * std::max(1.0, std::fabs(m.hi));
        return m;
    }

    dd m(0.0);
    if (!(rg_e.hi == 0.0 && rg_e.lo == 0.0)) {
        dd a_e = 1.5 - b;
        m += rg_e * rg_e * detail::hyp2f1_near_unit(a_e, a_e, dd(0.5), w);
    }
    if (!(rg_o.hi == 0.0 && rg_o.lo == 0.0)) {
        dd a_o = 2.0 - b;
        m -= y * (rg_o * rg_o * detail::hyp2f1_near_unit(a_o, a_o, dd(1.5), w));
    }
    if (abs_err) *abs_err = 1e-26 * std::max(1.0, std::fabs(m.hi));
    return m;
}

dd critical2_mid(double beta, double y) {
    const dd b(beta);
    const dd z = dd(y) * dd(y) / 4.0;
    dd m(0.0);
    dd rg_e = dd_rgamma(b - 0.5), rg_o = dd_rgamma(b - 1.0);
    if (!(rg_e.hi == 0.0 && rg_e.lo == 0.0))
        m += rg_e * rg_e * detail::hyp2f1_series(1.5 - b, 1.5 - b, dd(0.5), z);
    if (!(rg_o.hi == 0.0 && rg_o.lo == 0.0))
        m -= dd(y) * rg_o * rg_o * detail::hyp2f1_series(2.0 - b, 2.0 - b, dd(1.5), z);
    return m;
}

SeriesValue make_series_value(const dd& v, double abs_err, long terms, double tol,
                              bool converged) {
    SeriesValue out;
    out.value = to_double(v);
    out.abs_error_estimate = abs_err;
    out.terms_used = terms;
    out.converged = converged && abs_err <= tol * std::max(1.0, std::fabs(out.value));
    return out;
}

}  // namespace

double radius(const MLRParams& p) {
    long ln = p.alpha.l() * p.n;
    long k = p.alpha.k();
    if (ln < k) return std::numeric_limits<double>::infinity();
    if (ln > k) return 0.0;
    return std::pow(static_cast<double>(k) / p.alpha.l(),
                    static_cast<double>(ln) / k);
}

WeightCoefficient weight_coeff(const MLRParams& p, long r) {
    if (p.classification() == Classification::Super)
        throw DomainError("weight_coeff: radius is zero for ln > k");
    if (r < 0) throw DomainError("weight_coeff: negative index");
    const double lk = p.alpha.value();
    WeightCoefficient out;
    out.r = r;
    out.b_r = 1.0 - p.beta + lk * (1.0 + r);
    if (coeff_is_pole(p.beta, p.alpha.l(), p.alpha.k(), r)) {
        out.c_r = 0.0;
        return out;
    }
    dd x = dd(p.beta) - dd(static_cast<double>(p.alpha.l()) * (1.0 + r)) /
                            dd(static_cast<double>(p.alpha.k()));
    dd fact(1.0);
    for (long i = 2; i <= r; ++i) fact = fact * static_cast<double>(i);
    dd c = powi(dd_rgamma(x), p.n) / fact;
    out.c_r = (r % 2) ? -to_double(c) : to_double(c);
    return out;
}

SeriesValue weight_eval(const MLRParams& p, double y, double tol, long term_cap) {
    auto cls = p.classification();
    if (cls == Classification::Super)
        throw DomainError("weight_eval: radius is zero for ln > k");
    if (y < 0.0) throw DomainError("weight_eval: requires y >= 0");
    if (y == 0.0) {
        double v = std::pow(reciprocal_gamma(p.beta - p.alpha.value()), p.n);
        return {v, std::fabs(v) * 1e-14, 1, true};
    }
    if (cls == Classification::Critical) {
        double R = radius(p);
        if (y >= R) return {0.0, 0.0, 0, true};
        if (p.n == 2) {
            double dist = R - y;
            if (dist < 0.3 * R) return detail::weight_eval_near_radius(p, dist, tol);
            dd v = critical2_mid(p.beta, y);
            double err = 1e-26 * std::max(1.0, std::fabs(v.hi));
            return make_series_value(v, err, 0, tol, true);
        }
    }
    ChainSum cs = weight_chains(p, y, std::min(tol, 1e-20), term_cap);
    if (!cs.converged)
        throw ConvergenceError("weight_eval: series did not converge within " +
                               std::to_string(term_cap) + " terms");
    double abs_err = cs.last_abs + 64.0 * kEpsDD * cs.max_abs * p.alpha.k();
    return make_series_value(cs.value, abs_err, cs.terms, tol, true);
}

std::optional<double> weight_oracle(const MLRParams& p, double y) {
    const long l = p.alpha.l(), k = p.alpha.k();
    if (p.n != 2 || l != 1) return std::nullopt;
    if (k == 2 && p.beta == 1.0) {
        if (y >= 2.0) return 0.0;
        return 2.0 / (M_PI * std::sqrt(4.0 - y * y));
    }
    if (k == 2 && p.beta == 0.5) {
        if (y >= 2.0) return 0.0;
        return -2.0 * y / (M_PI * std::pow(4.0 - y * y, 1.5));
    }
    if (k == 3 && p.beta == 1.0) {
        double z = y * y * y / 54.0;
        if (y == 0.0) return std::pow(reciprocal_gamma(2.0 / 3.0), 2);
        return std::sqrt(y) / (2.0 * std::pow(M_PI, 1.5)) * std::exp(-z) * bessel_k(1.0 / 6.0, z);
    }
    if (k == 4 && p.beta == 1.0) {
        if (y == 0.0) return std::pow(reciprocal_gamma(0.75), 2);
        double z = y * y / 16.0;
        double diff = bessel_i(0.25, z) - bessel_i(-0.25, z);
        return y / (4.0 * std::sqrt(2.0)) * diff * diff;
    }
    return std::nullopt;
}

double weight_asymptotic_tail(const MLRParams& p, double y) {
    if (p.classification() != Classification::Sub)
        throw DomainError("weight_asymptotic_tail: SUB classification required");
    if (!(y > 0.0)) throw DomainError("weight_asymptotic_tail: requires y > 0");
    const double l = p.alpha.l(), k = p.alpha.k(), n = p.n;
    double power = (n * l - n * k * (p.beta - 0.5)) / (k - n * l);
    double inner = (n * l * std::log(l) + k * std::log(y) - k * std::log(k)) / (k - n * l);
    double log_tail = power * std::log(y) - (k - n * l) * std::exp(inner);
    if (log_tail < -700.0) return 0.0;
    return std::exp(log_tail);
}

bool exponential_bound_check(const MLRParams& p, double y_max, int grid) {
    if (!(p.beta > p.alpha.value()))
        throw DomainError("exponential_bound_check: requires beta > l/k");
    double g = reciprocal_gamma(p.beta - p.alpha.value());
    double scale = std::pow(std::fabs(g), p.n);
    for (int i = 0; i <= grid; ++i) {
        double y = y_max * i / grid;
        SeriesValue m = weight_eval(p, y, 1e-12);
        double bound = std::exp(y) * scale;
        if (std::fabs(m.value) > bound * (1.0 + 1e-9) + m.abs_error_estimate) return false;
    }
    return true;
}

WeightProfile build_weight_profile(const MLRParams& p, double y_max, int grid_size,
                                   double tol) {
    if (grid_size < 2) throw DomainError("build_weight_profile: grid size must be >= 2");
    auto cls = p.classification();
    if (cls == Classification::Super)
        throw DomainError("build_weight_profile: radius is zero for ln > k");
    double R = radius(p);
    double hi = y_max;
    if (cls == Classification::Critical) hi = std::min(hi, R * (1.0 - 1e-3));
    else hi = std::min(hi, detail::weight_feasible_ymax(p, 0.1 * tol));

    WeightProfile prof{p, {}, {}, R, {}, tol};
    prof.grid.reserve(grid_size);
    for (int i = 0; i < grid_size; ++i) {
        double y = hi * (i + 1) / grid_size;
        SeriesValue v = weight_eval(p, y, tol);
        prof.grid.emplace_back(y, v.value);
        prof.abs_err.push_back(v.abs_error_estimate);
    }
    // negative-interval detection: sign changes bisected to width <= 1e-3
    double prev_y = 0.0;
    double prev_m = to_double(weight_eval(p, 0.0, tol).value);
    bool in_neg = prev_m < -tol;
    double neg_start = in_neg ? 0.0 : -1.0;
    for (auto& [y, m] : prof.grid) {
        bool neg = m < -tol;
        if (neg && !in_neg) {
            neg_start = (prev_m < 0.0) ? prev_y
                                       : detail::bisect_sign_change(p, prev_y, y, tol, 1e-3);
            in_neg = true;
        } else if (!neg && in_neg && m > tol) {
            double end = detail::bisect_sign_change(p, prev_y, y, tol, 1e-3);
            prof.negative_intervals.emplace_back(neg_start, end);
            in_neg = false;
        }
        prev_y = y;
        prev_m = m;
    }
    if (in_neg) prof.negative_intervals.emplace_back(neg_start, prev_y);
    return prof;
}

namespace detail {

double weight_feasible_ymax(const MLRParams& p, double noise_abs) {
    if (p.classification() != Classification::Sub)
        return radius(p);
    const double l = p.alpha.l(), k = p.alpha.k(), n = p.n;
    // the cancellation noise is eps * max_term * (number of comparable terms);
    // 256 covers the plateau width for every tested parameter set
    double e_max = std::log(std::max(noise_abs, 1e-250) / (256.0 * kEpsDD));
    // growth exponent (k-nl)(l^{nl} y^k / k^k)^{1/(k-nl)} == e_max
    double d = k - n * l;
    double log_yk = d * std::log(e_max / d) - n * l * std::log(l) + k * std::log(k);
    return std::exp(log_yk / k);
}

double weight_tail_cutoff(const MLRParams& p, double threshold, double inflate) {
    if (p.classification() != Classification::Sub)
        throw DomainError("weight_tail_cutoff: SUB only");
    auto log_tail = [&](double y) {
        const double l = p.alpha.l(), k = p.alpha.k(), n = p.n;
        double power = (n * l - n * k * (p.beta - 0.5)) / (k - n * l);
        double inner = (n * l * std::log(l) + k * std::log(y) - k * std::log(k)) / (k - n * l);
        return power * std::log(y) - (k - n * l) * std::exp(inner) / inflate;
    };
    double target = std::log(threshold);
    double y = 1.0;
    while (!(log_tail(y) < target && log_tail(y * 1.01) < log_tail(y)) && y < 1e6) y *= 1.5;
    double lo = y / 1.5, hiy = y;
    for (int i = 0; i < 60; ++i) {
        double mid = 0.5 * (lo + hiy);
        if (log_tail(mid) < target && log_tail(mid * 1.01) < log_tail(mid)) hiy = mid;
        else lo = mid;
    }
    return hiy;
}

SeriesValue weight_eval_near_radius(const MLRParams& p, double dist, double tol) {
    if (p.classification() != Classification::Critical || p.n != 2)
        throw DomainError("weight_eval_near_radius: n=2 critical family only");
    if (!(dist > 0.0)) return {0.0, 0.0, 0, true};
    double abs_err = 0.0;
    dd v = critical2_near_radius(p.beta, dist, &abs_err);
    return make_series_value(v, abs_err, 0, tol, true);
}

double bisect_sign_change(const MLRParams& p, double y_lo, double y_hi, double tol,
                          double width_tol) {
    double f_lo = weight_eval(p, y_lo, tol).value;
    while (y_hi - y_lo > width_tol) {
        double mid = 0.5 * (y_lo + y_hi);
        double f_mid = weight_eval(p, mid, tol).value;
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            y_lo = mid;
            f_lo = f_mid;
        } else {
            y_hi = mid;
        }
    }
    return 0.5 * (y_lo + y_hi);
}

}  // namespace detail

}  // namespace mlr
