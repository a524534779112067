#include "mlrfun/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "mlrfun/dd.hpp"
#include "mlrfun/errors.hpp"

namespace mlr {

namespace {

// Lanczos, g = 607/128, 15 terms (Godfrey's coefficients).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5,
};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// log Gamma(x) for x > 0 via Lanczos; relative error of exp() of it ~1e-14.
double lanczos_lgamma(double x) {
    double sum = kLanczos[0];
    for (int i = 1; i < 15; ++i) sum += kLanczos[i] / (x + i - 1);
    double base = x + kLanczosG - 0.5;
    return (x - 0.5) * std::log(base) - base + 0.5 * std::log(2.0 * M_PI) + std::log(sum);
}

}  // namespace

double sin_pi(double x) {
    double n = std::round(x);
    double r = x - n;  // exact
    double v = std::sin(M_PI * r);
    return std::fmod(n, 2.0) != 0.0 ? -v : v;
}

double gamma(double x) {
    if (is_nonpositive_integer(x))
        throw DomainError("gamma: pole at x = " + std::to_string(x));
    if (x >= 0.5) {
        if (x > 171.62) return std::numeric_limits<double>::infinity();
        return std::exp(lanczos_lgamma(x));
    }
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return M_PI / (sin_pi(x) * std::exp(lanczos_lgamma(1.0 - x)));
}

double reciprocal_gamma(double x) {
    if (x >= 0.5) {
        if (x > 171.62) return 0.0;
        return std::exp(-lanczos_lgamma(x));
    }
    double s = sin_pi(x);
    if (s == 0.0) return 0.0;
    double lg = lanczos_lgamma(1.0 - x);
    if (lg > 700.0) {
        // |1/Gamma| overflows double this far down the negative axis
        double inf = std::numeric_limits<double>::infinity();
        return s > 0 ? inf : -inf;
    }
    return s * std::exp(lg) / M_PI;
}

double pochhammer(double c, int r) {
    if (r < 0) throw DomainError("pochhammer: negative index");
    double p = 1.0;
    for (int i = 0; i < r; ++i) p *= c + i;
    return p;
}

double pochhammer_split(double beta, int j, int l, int k, int r) {
    if (l <= 0 || k <= 0 || r < 0 || j < 0 || j >= k)
        throw DomainError("pochhammer_split: requires l,k > 0, r >= 0, 0 <= j < k");
    double base = beta + static_cast<double>(l) * j / k;
    double prod = 1.0;
    for (int i = 0; i < l; ++i) prod *= pochhammer((base + i) / l, r);
    return std::pow(static_cast<double>(l), static_cast<double>(r) * l) * prod;
}

namespace detail {

PfqValue pfq_dd(std::span<const dd> upper, std::span<const dd> lower, double z,
                double stop_tol, int term_cap) {
    const std::size_t p = upper.size(), q = lower.size();
    for (const dd& b : lower) {
        if (is_nonpositive_integer(to_double(b)))
            throw DomainError("pfq: lower parameter " + std::to_string(to_double(b)) +
                              " is a nonpositive integer");
    }
    if (p > q + 1)
        throw ConvergenceError("pfq: divergent for p > q+1");
    if (p == q + 1 && std::fabs(z) >= 1.0)
        throw ConvergenceError("pfq: divergent for p = q+1 with |z| >= 1");

    dd sum(1.0);
    dd term(1.0);
    PfqValue out{dd(0.0), 1.0, 1.0, 0.0, 0};
    double prev_abs = 1.0;
    int consecutive_small = 0;
    long r = 0;
    for (; r < term_cap; ++r) {
        dd factor(z);
        for (const dd& a : upper) factor = factor * (a + static_cast<double>(r));
        for (const dd& b : lower) factor = factor / (b + static_cast<double>(r));
        factor = factor / static_cast<double>(r + 1);
        term = term * factor;
        sum += term;
        double ta = std::fabs(to_double(term));
        if (!std::isfinite(ta))
            throw ConvergenceError("pfq: term overflow (|z| too large for direct summation)");
        out.sum_abs += ta;
        if (ta > out.max_abs) out.max_abs = ta;
        if (ta < stop_tol * std::max(std::fabs(to_double(sum)), 1e-300)) {
            if (++consecutive_small >= 2) { ++r; break; }
        } else {
            consecutive_small = 0;
        }
        out.tail_abs = ta + prev_abs;
        prev_abs = ta;
    }
    if (consecutive_small < 2)
        throw ConvergenceError("pfq: no convergence within " + std::to_string(term_cap) +
                               " terms");
    out.value = sum;
    out.terms = r + 1;
    out.tail_abs = std::fabs(to_double(term)) + prev_abs;
    return out;
}

}  // namespace detail

SeriesValue pfq(std::span<const double> upper, std::span<const double> lower, double z,
                double tol, int term_cap) {
    std::vector<dd> up(upper.begin(), upper.end()), lo(lower.begin(), lower.end());
    auto core = detail::pfq_dd(up, lo, z, tol, term_cap);
    SeriesValue out;
    out.value = to_double(core.value);
    out.terms_used = core.terms;
    constexpr double kEpsDD = 4.93e-32;
    out.abs_error_estimate = core.tail_abs + 16.0 * kEpsDD * core.sum_abs;
    out.converged = out.abs_error_estimate <= tol * std::max(1.0, std::fabs(out.value));
    return out;
}

double bessel_i(double nu, double x) {
    if (x < 0.0) throw DomainError("bessel_i: requires x >= 0");
    if (nu < 0.0 && nu == std::floor(nu)) return bessel_i(-nu, x);  // I_{-n} = I_n
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw DomainError("bessel_i: x = 0 with negative order");
    }
    // ascending series: (x/2)^nu sum_m (x^2/4)^m / (m! Gamma(nu+m+1))
    double q = x * x / 4.0;
    double sum = 0.0;
    double term = reciprocal_gamma(nu + 1.0);
    for (int m = 0; m < 500; ++m) {
        sum += term;
        double next = term * q / ((m + 1.0) * (nu + m + 1.0));
        if (std::fabs(next) < 1e-18 * std::fabs(sum)) break;
        term = next;
    }
    return std::pow(x / 2.0, nu) * sum;
}

double bessel_k(double nu, double x) {
    if (x <= 0.0) throw DomainError("bessel_k: requires x > 0");
    if (nu == std::floor(nu))
        throw DomainError("bessel_k: integer order not supported");
    return M_PI * (bessel_i(-nu, x) - bessel_i(nu, x)) / (2.0 * sin_pi(nu));
}

double bessel_j0_of(double x) {
    if (x < 0.0) throw DomainError("bessel_j0_of: requires x >= 0");
    dd sum(1.0);
    dd term(1.0);
    for (int r = 0; r < 400; ++r) {
        term = term * (-x) / static_cast<double>((r + 1) * (r + 1));
        sum += term;
        if (std::fabs(to_double(term)) < 1e-25 * std::max(1.0, std::fabs(to_double(sum))))
            break;
    }
    return to_double(sum);
}

}  // namespace mlr
