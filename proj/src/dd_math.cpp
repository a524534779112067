#include "mlrfun/dd.hpp"

#include <array>
#include <cmath>

namespace mlr {

namespace {

// Stirling series for log Gamma: sum c_m / x^{2m-1}, c_m = B_{2m}/(2m(2m-1))
constexpr dd kStirling[] = {
    {0x1.5555555555555p-4, 0x1.5555555555555p-58},
    {-0x1.6c16c16c16c17p-9, 0x1.f49f49f49f49fp-64},
    {0x1.a01a01a01a01ap-11, 0x1.a01a01a01a01ap-71},
    {-0x1.3813813813814p-11, 0x1.fb1fb1fb1fb20p-65},
    {0x1.b951e2b18ff23p-11, 0x1.5c3a9ce01b952p-65},
    {-0x1.f6ab0d9993c7dp-10, 0x1.f82553c999b0ep-64},
    {0x1.a41a41a41a41ap-8, 0x1.0690690690690p-62},
    {-0x1.e4286cb0f5398p-6, 0x1.1efcdab896745p-61},
    {0x1.6fe96381e0680p-3, -0x1.79e2405a71f88p-61},
    {-0x1.6476701181f3ap+0, 0x1.24246319da678p-56},
    {0x1.ace44322ce006p+3, -0x1.62c2b1bbcdd32p-51},
    {-0x1.39b2525cccc1bp+7, 0x1.52604768a30fcp-47},
    {0x1.12234e81b4e82p+11, -0x1.2c5f92c5f92c6p-43},
    {-0x1.1a198ae1c4ab8p+15, 0x1.4c012227b696ep-41},
    {0x1.51a2089a6e11ap+19, 0x1.c219ee4fdc447p-36},
    {-0x1.d1089b142d357p+23, -0x1.e2030b4d5de20p-31},
};

// digamma asymptotic coefficients B_{2m}/(2m)
constexpr dd kDigammaCoef[] = {
    {0x1.5555555555555p-4, 0x1.5555555555555p-58},
    {-0x1.1111111111111p-7, -0x1.1111111111111p-63},
    {0x1.0410410410410p-8, 0x1.0410410410410p-62},
    {-0x1.1111111111111p-8, -0x1.1111111111111p-64},
    {0x1.f07c1f07c1f08p-8, -0x1.f07c1f07c1f08p-63},
    {-0x1.5995995995996p-6, 0x1.9a99a99a99a9ap-60},
    {0x1.5555555555555p-4, 0x1.5555555555555p-58},
    {-0x1.c5e5e5e5e5e5ep-2, -0x1.7979797979798p-56},
    {0x1.86e7f9b9fe6e8p+1, -0x1.9180646019180p-57},
    {-0x1.a74ca514ca515p+4, 0x1.ad759ad759ad7p-51},
    {0x1.1975cc0ed7304p+8, -0x1.28cfc4a33f129p-46},
    {-0x1.c2f0566566566p+11, -0x1.5995995995996p-43},
    {0x1.ac572aaaaaaabp+15, -0x1.5555555555555p-39},
    {-0x1.dc0b1a5cfbe16p+19, -0x1.73ef85973ef86p-35},
};

constexpr double kStirlingThreshold = 35.0;

// sin(t), cos(t) kernels for |t| <= pi/4, plain Taylor in dd.
dd sin_kernel(const dd& t) {
    dd t2 = t * t;
    dd term = t;
    dd sum = t;
    for (int m = 1; m <= 16; ++m) {
        term = term * t2 / static_cast<double>((2 * m) * (2 * m + 1));
        term = -term;
        sum += term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(sum.hi)) break;
    }
    return sum;
}

dd cos_kernel(const dd& t) {
    dd t2 = t * t;
    dd term(1.0);
    dd sum(1.0);
    for (int m = 1; m <= 16; ++m) {
        term = term * t2 / static_cast<double>((2 * m - 1) * (2 * m));
        term = -term;
        sum += term;
        if (std::fabs(term.hi) < 1e-36) break;
    }
    return sum;
}

}  // namespace

dd dd_exp(const dd& x) {
    if (x.hi > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
    if (x.hi < -745.0) return {0.0, 0.0};
    double n = std::round(x.hi / ddc::kLn2.hi);
    dd r = x - ddc::kLn2 * n;
    // |r| <= 0.35; Taylor
    dd term(1.0);
    dd sum(1.0);
    for (int k = 1; k <= 24; ++k) {
        term = term * r / static_cast<double>(k);
        sum += term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(sum.hi)) break;
    }
    return ldexp(sum, static_cast<int>(n));
}

dd dd_log(const dd& x) {
    if (!(x.hi > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    // Newton on exp: y1 = y0 + x*exp(-y0) - 1, doubles the digits per pass.
    dd y(std::log(x.hi));
    for (int i = 0; i < 2; ++i) {
        y = y + x * dd_exp(-y) - 1.0;
    }
    return y;
}

dd dd_pow(const dd& x, const dd& y) { return dd_exp(y * dd_log(x)); }

dd dd_sin_pi(const dd& x) {
    double n = std::round(x.hi);
    dd r = x - n;  // exact for |x| < 2^52
    if (r.hi > 0.5) r = r - 1.0, n += 1;
    if (r.hi < -0.5) r = r + 1.0, n -= 1;
    bool flip = std::fmod(n, 2.0) != 0.0;
    dd v;
    if (std::fabs(r.hi) <= 0.25) {
        v = sin_kernel(ddc::kPi * r);
    } else {
        dd q = (r.hi > 0 ? 0.5 - r : -0.5 - r);
        v = cos_kernel(ddc::kPi * q);
        if (r.hi < 0) v = -v;
    }
    return flip ? -v : v;
}

dd dd_cos_pi(const dd& x) { return dd_sin_pi(x + 0.5); }

dd dd_lgamma(const dd& x) {
    // x > 0 only. Shift to the Stirling region, then the asymptotic series.
    dd shifted = x;
    dd logprod(0.0);
    if (x.hi < kStirlingThreshold) {
        dd prod(1.0);
        while (shifted.hi < kStirlingThreshold) {
            prod = prod * shifted;
            shifted = shifted + 1.0;
        }
        logprod = dd_log(prod);
    }
    dd lx = dd_log(shifted);
    dd res = (shifted - 0.5) * lx - shifted + ddc::kHalfLn2Pi;
    dd x2 = shifted * shifted;
    dd xpow = shifted;
    for (const dd& c : kStirling) {
        dd term = c / xpow;
        res += term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(res.hi)) break;
        xpow = xpow * x2;
    }
    return res - logprod;
}

dd dd_rgamma(const dd& x) {
    if (x.hi >= 0.5) return dd_exp(-dd_lgamma(x));
    // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    dd s = dd_sin_pi(x);
    if (s.hi == 0.0 && s.lo == 0.0) return {0.0, 0.0};
    return s * dd_exp(dd_lgamma(1.0 - x)) / ddc::kPi;
}

dd dd_gamma_signed(const dd& x) {
    if (x.hi >= 0.5) return dd_exp(dd_lgamma(x));
    dd r = dd_rgamma(x);
    if (r.hi == 0.0) {
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return 1.0 / r;
}

dd dd_digamma(const dd& x) {
    // x > 0. Recurrence up to the asymptotic region.
    dd acc(0.0);
    dd z = x;
    while (z.hi < kStirlingThreshold) {
        acc = acc + 1.0 / z;
        z = z + 1.0;
    }
    dd res = dd_log(z) - 0.5 / z;
    dd z2 = z * z;
    dd zpow = z2;
    for (const dd& c : kDigammaCoef) {
        dd term = c / zpow;
        res = res - term;
        if (std::fabs(term.hi) < 1e-36 * std::fabs(res.hi)) break;
        zpow = zpow * z2;
    }
    return res - acc;
}

}  // namespace mlr
