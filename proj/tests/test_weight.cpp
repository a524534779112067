#include <doctest.h>

#include <cmath>
#include <vector>

#include "mlrfun/bernstein.hpp"
#include "mlrfun/errors.hpp"
#include "mlrfun/specfun.hpp"
#include "mlrfun/weight.hpp"

using namespace mlr;

namespace {

MLRParams P(long l, long k, double beta, int n) { return {RationalOrder(l, k), beta, n}; }

}  // namespace

TEST_CASE("radius per classification") {
    CHECK(radius(P(1, 2, 1.0, 2)) == doctest::Approx(2.0));
    CHECK(radius(P(1, 5, 0.6, 5)) == doctest::Approx(5.0));
    CHECK(std::isinf(radius(P(3, 7, 1.0, 2))));
    CHECK(radius(P(1, 2, 1.0, 3)) == 0.0);
}

TEST_CASE("weight coefficients") {
    // c_0 = 1/Gamma(beta - l/k)^n
    auto c0 = weight_coeff(P(3, 7, 0.5, 2), 0);
    CHECK(c0.c_r == doctest::Approx(std::pow(reciprocal_gamma(0.5 - 3.0 / 7.0), 2)));
    CHECK(c0.b_r == doctest::Approx(1.0 - 0.5 + 3.0 / 7.0));
    // (1/2, 1, 2): c_1 = 0 (Gamma pole), c_2 = 1/(8 pi)
    CHECK(weight_coeff(P(1, 2, 1.0, 2), 1).c_r == 0.0);
    CHECK(weight_coeff(P(1, 2, 1.0, 2), 2).c_r == doctest::Approx(1.0 / (8.0 * M_PI)));
    CHECK_THROWS_AS(weight_coeff(P(1, 2, 1.0, 3), 0), DomainError);
}

TEST_CASE("weight_eval basics") {
    // y = 0 limit: 1/Gamma(beta - l/k)^n
    for (auto p : {P(1, 2, 1.0, 2), P(1, 3, 1.0, 2), P(3, 7, 0.5, 2), P(1, 3, 2.0 / 3, 3)}) {
        double want = std::pow(reciprocal_gamma(p.beta - p.alpha.value()), p.n);
        CHECK(std::fabs(weight_eval(p, 1e-8, 1e-10).value - want) <=
              1e-6 * std::max(1.0, std::fabs(want)));
    }
    // critical support: exactly zero at/beyond the radius
    CHECK(weight_eval(P(1, 2, 1.0, 2), 3.0, 1e-10).value == 0.0);
    CHECK(weight_eval(P(1, 2, 1.0, 2), 2.0, 1e-10).value == 0.0);
    CHECK_THROWS_AS(weight_eval(P(1, 2, 1.0, 3), 0.5, 1e-10), DomainError);
    // frozen closed-form points
    CHECK(weight_eval(P(1, 2, 1.0, 2), 1.0, 1e-12).value ==
          doctest::Approx(2.0 / (M_PI * std::sqrt(3.0))).epsilon(1e-11));
    CHECK(weight_eval(P(1, 2, 0.5, 2), 1.0, 1e-12).value ==
          doctest::Approx(-2.0 / (M_PI * std::pow(3.0, 1.5))).epsilon(1e-11));
}

TEST_CASE("oracle equivalence on dense grids") {
    struct Case { MLRParams p; double lo, hi; };
    std::vector<Case> cases{{P(1, 2, 1.0, 2), 0.0, 1.95},
                            {P(1, 2, 0.5, 2), 0.0, 1.95},
                            {P(1, 3, 1.0, 2), 0.05, 6.0},
                            {P(1, 4, 1.0, 2), 0.0, 6.0}};
    for (const auto& c : cases) {
        for (int i = 0; i <= 200; ++i) {
            double y = c.lo + (c.hi - c.lo) * i / 200.0;
            auto oracle = weight_oracle(c.p, y);
            REQUIRE(oracle.has_value());
            double got = weight_eval(c.p, y, 1e-12).value;
            CHECK(std::fabs(got - *oracle) <= 1e-9 * std::max(1.0, std::fabs(*oracle)));
        }
    }
    CHECK(!weight_oracle(P(3, 7, 1.0, 2), 1.0).has_value());
    // (1/2,1,2) at y=0 is 1/pi; the Bessel-I-square case is nonnegative
    CHECK(*weight_oracle(P(1, 2, 1.0, 2), 0.0) == doctest::Approx(1.0 / M_PI));
    for (double y = 0.0; y <= 6.0; y += 0.37) CHECK(*weight_oracle(P(1, 4, 1.0, 2), y) >= 0.0);
}

TEST_CASE("critical n=2 near-radius path is continuous across the seam") {
    for (double beta : {1.0, 0.75, 1.25, 0.6, 1.4}) {
        MLRParams p = P(1, 2, beta, 2);
        // seam sits at dist = 0.3*R; compare both mechanisms just outside it
        double y = 2.0 - 0.6001;
        double a = weight_eval(p, y, 1e-12).value;
        double b = detail::weight_eval_near_radius(p, 2.0 - y, 1e-12).value;
        CHECK(std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(a)));
    }
    // deep near-radius values against frozen mpmath references
    CHECK(detail::weight_eval_near_radius(P(1, 2, 0.75, 2), 1e-8, 1e-12).value ==
          doctest::Approx(0.03526184907090871842552).epsilon(1e-10));
    CHECK(detail::weight_eval_near_radius(P(1, 2, 1.25, 2), 1e-10, 1e-12).value ==
          doctest::Approx(0.5641895835512824718453).epsilon(1e-10));
    // beta = 1: matches the closed form essentially exactly
    double d = 1e-12;
    double want = 2.0 / (M_PI * std::sqrt(d * (4.0 - d)));
    CHECK(detail::weight_eval_near_radius(P(1, 2, 1.0, 2), d, 1e-12).value ==
          doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("nonnegativity under the sufficient conditions") {
    // (1/n, (n+1)/(2n), n) on [0, R): supermajorization threshold cases
    for (int n : {2, 3, 4, 5}) {
        MLRParams p = P(1, n, (n + 1.0) / (2.0 * n), n);
        double R = radius(p);
        for (int i = 0; i <= 400; ++i) {
            double y = R * (1.0 - 2e-3) * i / 400.0;
            CHECK(weight_eval(p, y, 1e-12).value >= -1e-10);
        }
    }
    // (l/k, 1, 2) with 2l < k
    for (auto [l, k] : std::vector<std::pair<long, long>>{{1, 3}, {1, 4}, {2, 5}, {3, 7}}) {
        MLRParams p = P(l, k, 1.0, 2);
        double cap = std::min(10.0, detail::weight_feasible_ymax(p, 1e-11));
        for (int i = 0; i <= 400; ++i) {
            double y = cap * i / 400.0;
            CHECK(weight_eval(p, y, 1e-12).value >= -1e-10);
        }
        if (cap < 10.0) {
            // beyond the evaluable range the (uninflated) tail certifies |m| < 1e-10
            CHECK(weight_asymptotic_tail(p, cap) < 1e-10);
        }
    }
}

TEST_CASE("sign witness: (1/2, 1/2, 2) strictly negative inside (0, 2)") {
    for (double y = 0.05; y < 2.0; y += 0.05) {
        CHECK(weight_eval(P(1, 2, 0.5, 2), y, 1e-12).value < 0.0);
    }
}

TEST_CASE("asymptotic tail decay-rate ratio") {
    MLRParams p = P(1, 3, 1.0, 2);
    double prev_ratio = 2.0;
    for (double y : {4.0, 6.0, 8.0}) {
        double m = weight_eval(p, y, 1e-13).value;
        double t = weight_asymptotic_tail(p, y);
        double ratio = std::log(std::fabs(m)) / std::log(t);
        CHECK(std::fabs(ratio - 1.0) < 0.1);
        CHECK(ratio < prev_ratio);  // approaches 1 from above as y grows
        prev_ratio = ratio;
    }
    CHECK_THROWS_AS(weight_asymptotic_tail(p, 0.0), DomainError);
    CHECK_THROWS_AS(weight_asymptotic_tail(P(1, 2, 1.0, 2), 1.0), DomainError);
    // goes to zero along the positive semi-axis
    CHECK(weight_asymptotic_tail(p, 30.0) < weight_asymptotic_tail(p, 20.0));
    CHECK(weight_asymptotic_tail(p, 40.0) == 0.0);  // underflows cleanly
}

TEST_CASE("exponential bound |m| <= e^y / Gamma(beta-l/k)^n") {
    CHECK(exponential_bound_check(P(1, 2, 1.0, 2), 1.9));
    CHECK(exponential_bound_check(P(1, 3, 1.0, 2), 10.0));
    CHECK(exponential_bound_check(P(2, 5, 1.0, 2), 5.0));
    // the constant 1/Gamma(beta - l/k)^n is too small below the CM threshold:
    // |m(0.5)| = 0.0234 > e^{0.5}/Gamma(1/14)^2 = 0.0088 for (3/7, 1/2, 2).
    // m is still of exponential type there, just with a larger constant.
    CHECK(!exponential_bound_check(P(3, 7, 0.5, 2), 5.0));
    CHECK_THROWS_AS(exponential_bound_check(P(1, 2, 0.5, 2), 1.0), DomainError);
}

TEST_CASE("weight profile structure") {
    auto prof = build_weight_profile(P(3, 7, 0.5, 2), 10.0, 500, 1e-10);
    REQUIRE(prof.grid.size() == 500);
    for (std::size_t i = 1; i < prof.grid.size(); ++i)
        CHECK(prof.grid[i].first > prof.grid[i - 1].first);
    REQUIRE(prof.negative_intervals.size() == 1);
    CHECK(prof.negative_intervals[0].first == doctest::Approx(0.086).epsilon(0.15));
    CHECK(prof.negative_intervals[0].second == doctest::Approx(1.666).epsilon(0.01));
    // critical profile stays below the radius
    auto cprof = build_weight_profile(P(1, 2, 1.0, 2), 5.0, 100, 1e-10);
    CHECK(cprof.radius == doctest::Approx(2.0));
    CHECK(cprof.grid.back().first < 2.0);
}

TEST_CASE("bernstein round-trip: SUB cases") {
    CHECK(verify_bernstein(P(1, 3, 1.0, 2), 2.0, 1e-6) <= 1e-6);
    CHECK(verify_bernstein(P(3, 7, 1.0, 2), 0.5, 1e-6) <= 1e-6);
    CHECK(verify_bernstein(P(1, 3, 2.0 / 3, 3), 1.0, 1e-6) <= 1e-6);
}

TEST_CASE("bernstein round-trip: critical n=2, including the boundary atom") {
    CHECK(verify_bernstein(P(1, 2, 1.0, 2), 1.0, 1e-6) <= 1e-6);
    CHECK(verify_bernstein(P(1, 2, 0.75, 2), 2.0, 1e-6) <= 1e-6);
    // the threshold measure carries the point mass 1/sqrt(pi) at y = 2
    double atom = bernstein_atom(P(1, 2, 0.75, 2), 1e-8);
    CHECK(std::fabs(atom - 1.0 / std::sqrt(M_PI)) < 1e-7);
    CHECK(bernstein_atom(P(1, 2, 1.0, 2), 1e-8) == 0.0);
    // contract checks
    CHECK_THROWS_AS(verify_bernstein(P(1, 2, 0.6, 2), 1.0, 1e-6), DomainError);
    CHECK_THROWS_AS(verify_bernstein(P(1, 3, 1.0, 3), 1.0, 1e-6), DomainError);  // n>=3 off-threshold
    CHECK_THROWS_AS(verify_bernstein(P(1, 2, 0.4, 2), 1.0, 1e-6), DomainError);
}

TEST_CASE("bernstein x = 0 recovers F(0) = 1/Gamma(beta)^n") {
    CHECK(verify_bernstein(P(1, 3, 1.0, 2), 0.0, 1e-6) <= 1e-8);
    CHECK(verify_bernstein(P(1, 2, 0.75, 2), 0.0, 1e-6) <= 1e-6);
}
