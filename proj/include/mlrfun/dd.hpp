#ifndef MLRFUN_DD_HPP
#define MLRFUN_DD_HPP

#include <cmath>
#include <limits>

// Double-double arithmetic (~31 decimal digits). Just the operations the
// series engines need; error-free transforms follow the usual QD scheme.

namespace mlr {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace ddops {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    dd t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd add(const dd& a, double b) {
    dd s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd mul(const dd& a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd div(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = add(a, mul(b, -q1));
    double q2 = r.hi / b.hi;
    r = add(r, mul(b, -q2));
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return add(q, q3);
}

}  // namespace ddops

inline dd operator+(const dd& a, const dd& b) { return ddops::add(a, b); }
inline dd operator+(const dd& a, double b) { return ddops::add(a, b); }
inline dd operator+(double a, const dd& b) { return ddops::add(b, a); }
inline dd operator-(const dd& a) { return {-a.hi, -a.lo}; }
inline dd operator-(const dd& a, const dd& b) { return ddops::add(a, -b); }
inline dd operator-(const dd& a, double b) { return ddops::add(a, -b); }
inline dd operator-(double a, const dd& b) { return ddops::add(-b, a); }
inline dd operator*(const dd& a, const dd& b) { return ddops::mul(a, b); }
inline dd operator*(const dd& a, double b) { return ddops::mul(a, b); }
inline dd operator*(double a, const dd& b) { return ddops::mul(b, a); }
inline dd operator/(const dd& a, const dd& b) { return ddops::div(a, b); }
inline dd operator/(const dd& a, double b) { return ddops::div(a, dd(b)); }
inline dd operator/(double a, const dd& b) { return ddops::div(dd(a), b); }

inline dd& operator+=(dd& a, const dd& b) { return a = a + b; }
inline dd& operator-=(dd& a, const dd& b) { return a = a - b; }
inline dd& operator*=(dd& a, const dd& b) { return a = a * b; }
inline dd& operator/=(dd& a, const dd& b) { return a = a / b; }

inline bool operator<(const dd& a, const dd& b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const dd& a, const dd& b) { return b < a; }
inline bool operator<(const dd& a, double b) { return a < dd(b); }
inline bool operator>(const dd& a, double b) { return dd(b) < a; }

inline dd fabs(const dd& a) { return a.hi < 0.0 ? -a : a; }
inline double to_double(const dd& a) { return a.hi + a.lo; }
inline bool isfinite(const dd& a) { return std::isfinite(a.hi); }

inline dd ldexp(const dd& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

inline dd sqrt(const dd& a) {
    if (a.hi <= 0.0) return {std::sqrt(a.hi), 0.0};
    double x = 1.0 / std::sqrt(a.hi);
    double ax = a.hi * x;
    dd ax2 = ddops::two_prod(ax, ax);
    double err = (a - ax2).hi * (x * 0.5);
    return ddops::quick_two_sum(ax, err);
}

// Integer power by binary exponentiation.
inline dd powi(dd base, long n) {
    bool inv = n < 0;
    unsigned long e = inv ? -static_cast<unsigned long>(n) : n;
    dd acc(1.0);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return inv ? 1.0 / acc : acc;
}

namespace ddc {
inline constexpr dd kPi{0x1.921fb54442d18p+1, 0x1.1a62633145c07p-53};
inline constexpr dd kTwoPi{0x1.921fb54442d18p+2, 0x1.1a62633145c07p-52};
inline constexpr dd kLn2{0x1.62e42fefa39efp-1, 0x1.abc9e3b39803fp-56};
inline constexpr dd kHalfLn2Pi{0x1.d67f1c864beb5p-1, -0x1.65b5a1b7ff5dfp-55};
}  // namespace ddc

// Transcendentals (dd_math.cpp)
dd dd_exp(const dd& x);
dd dd_log(const dd& x);
dd dd_pow(const dd& x, const dd& y);  // x > 0
dd dd_sin_pi(const dd& x);
dd dd_cos_pi(const dd& x);
dd dd_lgamma(const dd& x);      // x > 0
dd dd_rgamma(const dd& x);      // entire: 1/Gamma, any real x
dd dd_gamma_signed(const dd& x);  // Gamma with sign, poles -> +-inf
dd dd_digamma(const dd& x);     // x > 0

}  // namespace mlr

#endif
