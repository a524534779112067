#include "mlrfun/detail/hyp2f1.hpp"

#include <cmath>
#include <string>

#include "mlrfun/errors.hpp"

namespace mlr::detail {

namespace {

constexpr int kMaxTerms = 4000;

bool near_integer(double x, double& rounded) {
    rounded = std::round(x);
    return std::fabs(x - rounded) < 1e-12;
}

// sum_{n>=0} (a)_n (b)_n / (n! (g)_n) w^n   -- ordinary 2F1-type series
dd f_series(const dd& a, const dd& b, const dd& g, const dd& w) {
    dd term(1.0), sum(1.0);
    for (int n = 0; n < kMaxTerms; ++n) {
        dd num = (a + static_cast<double>(n)) * (b + static_cast<double>(n));
        dd den = (g + static_cast<double>(n)) * static_cast<double>(n + 1);
        term = term * num / den * w;
        sum += term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(sum.hi)) return sum;
    }
    throw ConvergenceError("hyp2f1: connection series did not converge");
}

// A&S 15.3.10 / 15.3.11: F(a,b;a+b+m;1-w) for integer m >= 0.
dd f_near_unit_integer(const dd& a, const dd& b, long m, const dd& w) {
    const dd c = a + b + static_cast<double>(m);
    dd logw = dd_log(w);
    dd total(0.0);

    if (m > 0) {
        // finite part
        dd pref = dd_gamma_signed(dd(static_cast<double>(m))) * dd_gamma_signed(c) *
                  dd_rgamma(a + static_cast<double>(m)) * dd_rgamma(b + static_cast<double>(m));
        dd term(1.0), finite(0.0);
        for (long n = 0; n < m; ++n) {
            if (n > 0) {
                dd num = (a + static_cast<double>(n - 1)) * (b + static_cast<double>(n - 1));
                dd den = dd(static_cast<double>(n)) * (1.0 - static_cast<double>(m) + static_cast<double>(n - 1));
                term = term * num / den * w;
            }
            finite += term;
        }
        total = pref * finite;
    }

    // log part
    dd sign = (m % 2 == 0) ? dd(1.0) : dd(-1.0);
    dd pref2 = -1.0 * sign * dd_gamma_signed(c) * dd_rgamma(a) * dd_rgamma(b) * powi(w, m);
    dd am = a + static_cast<double>(m), bm = b + static_cast<double>(m);
    dd psi_a = dd_digamma(am), psi_b = dd_digamma(bm);
    dd psi1 = dd_digamma(dd(1.0)), psim1 = dd_digamma(dd(static_cast<double>(m + 1)));
    dd coef = 1.0 / dd_gamma_signed(dd(static_cast<double>(m + 1)));  // 1/m! at n=0
    dd logsum(0.0);
    for (int n = 0; n < kMaxTerms; ++n) {
        dd bracket = logw - psi1 - psim1 + psi_a + psi_b;
        dd term = coef * bracket;
        logsum += term;
        if (std::fabs(term.hi) < 1e-35 * std::fabs(logsum.hi) && n > 2) break;
        // advance n -> n+1
        dd nn(static_cast<double>(n));
        coef = coef * (am + nn) * (bm + nn) / ((nn + 1.0) * (nn + 1.0 + static_cast<double>(m))) * w;
        psi1 += 1.0 / (nn + 1.0);
        psim1 += 1.0 / (nn + 1.0 + static_cast<double>(m));
        psi_a += 1.0 / (am + nn);
        psi_b += 1.0 / (bm + nn);
    }
    return total + pref2 * logsum;
}

}  // namespace

dd hyp2f1_series(const dd& a, const dd& b, const dd& c, const dd& z) {
    dd term(1.0), sum(1.0);
    for (int n = 0; n < 200000; ++n) {
        dd num = (a + static_cast<double>(n)) * (b + static_cast<double>(n));
        dd den = (c + static_cast<double>(n)) * static_cast<double>(n + 1);
        term = term * num / den * z;
        sum += term;
        if (std::fabs(term.hi) < 1e-35 * std::max(1.0, std::fabs(sum.hi))) return sum;
    }
    throw ConvergenceError("hyp2f1_series: did not converge (z too close to 1)");
}

dd hyp2f1_near_unit(const dd& a, const dd& b, const dd& c, const dd& w) {
    double s = to_double(c - a - b);
    double s_int;
    if (!near_integer(s, s_int)) {
        // two-series connection (A&S 15.3.6)
        dd sdd = c - a - b;
        dd t1 = dd_gamma_signed(c) * dd_gamma_signed(sdd) * dd_rgamma(c - a) * dd_rgamma(c - b);
        dd t2 = dd_gamma_signed(c) * dd_gamma_signed(-sdd) * dd_rgamma(a) * dd_rgamma(b) *
                dd_pow(w, sdd);
        dd s1 = f_series(a, b, 1.0 - sdd, w);
        dd s2 = f_series(c - a, c - b, 1.0 + sdd, w);
        return t1 * s1 + t2 * s2;
    }
    long m = static_cast<long>(s_int);
    if (m >= 0) return f_near_unit_integer(a, b, m, w);
    // Euler transform: F(a,b;c;z) = w^{c-a-b} F(c-a, c-b; c; z), making
    // the new parameter difference +|m|.
    return dd_pow(w, dd(static_cast<double>(m))) * f_near_unit_integer(c - a, c - b, -m, w);
}

}  // namespace mlr::detail
