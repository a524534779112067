#ifndef MLRFUN_PARAMS_HPP
#define MLRFUN_PARAMS_HPP

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "mlrfun/errors.hpp"

namespace mlr {

/// Rational exponent alpha = l/k, stored reduced, restricted to 0 < l/k < 1.
class RationalOrder {
  public:
    RationalOrder(long l, long k) {
        if (l <= 0 || k <= 0) throw DomainError("RationalOrder: l and k must be positive");
        long g = std::gcd(l, k);
        l_ = l / g;
        k_ = k / g;
        if (l_ >= k_) throw DomainError("RationalOrder: requires 0 < l/k < 1");
    }

    long l() const { return l_; }
    long k() const { return k_; }
    double value() const { return static_cast<double>(l_) / static_cast<double>(k_); }

    bool operator==(const RationalOrder& o) const { return l_ == o.l_ && k_ == o.k_; }

    /// Parses "l/k" (also accepts a bare numerator meaning l/1, which is rejected
    /// downstream by the range check).
    static RationalOrder parse(const std::string& s);

  private:
    long l_, k_;
};

/// Delta(r, lambda) = [lambda/r, (lambda+1)/r, ..., (lambda+r-1)/r].
std::vector<double> param_sequence(int r, double lambda);

enum class Classification { Sub, Critical, Super };  // ln<k, ln=k, ln>k

inline const char* to_string(Classification c) {
    switch (c) {
        case Classification::Sub: return "SUB";
        case Classification::Critical: return "CRITICAL";
        default: return "SUPER";
    }
}

struct MLRParams {
    RationalOrder alpha;
    double beta;
    int n;

    MLRParams(RationalOrder a, double b, int nn) : alpha(a), beta(b), n(nn) {
        if (!std::isfinite(beta)) throw DomainError("MLRParams: beta must be finite");
        if (n < 1) throw DomainError("MLRParams: n must be >= 1");
    }

    Classification classification() const {
        long ln = alpha.l() * n;
        if (ln < alpha.k()) return Classification::Sub;
        if (ln == alpha.k()) return Classification::Critical;
        return Classification::Super;
    }

    bool operator==(const MLRParams& o) const {
        return alpha == o.alpha && beta == o.beta && n == o.n;
    }
};

}  // namespace mlr

#endif
