#include <doctest.h>

#include <array>
#include <cmath>

#include "mlrfun/cm.hpp"
#include "mlrfun/errors.hpp"

using namespace mlr;

namespace {

MLRParams P(long l, long k, double beta, int n) { return {RationalOrder(l, k), beta, n}; }

}  // namespace

TEST_CASE("supermajorization bound and partial-sum checker") {
    CHECK(supermajorization_bound(2) == doctest::Approx(0.75));
    CHECK(supermajorization_bound(1) == doctest::Approx(1.0));
    CHECK(supermajorization_bound(5) == doctest::Approx(0.6));
    for (int n = 1; n <= 8; ++n) {
        double b = supermajorization_bound(n);
        CHECK(supermajorization_check(n, b));
        CHECK(supermajorization_check(n, b + 0.01));
        CHECK(!supermajorization_check(n, b - 0.01));
    }
}

TEST_CASE("scan reproduces the paper's negative intervals") {
    auto rep = scan_weight_sign(P(3, 7, 0.5, 2), 10.0);
    CHECK(rep.verdict == SignVerdict::NegativeFound);
    REQUIRE(rep.negative_intervals.size() == 1);
    CHECK(std::fabs(rep.negative_intervals[0].first - 0.086) <= 0.01);
    CHECK(std::fabs(rep.negative_intervals[0].second - 1.666) <= 0.01);
    CHECK(rep.y_max_scanned < 10.0);  // clamped by the tail cutoff

    // the (3/10, ., 3) interval from the figure belongs to beta = 1/3
    auto rep3 = scan_weight_sign(P(3, 10, 1.0 / 3.0, 3), 10.0);
    CHECK(rep3.verdict == SignVerdict::NegativeFound);
    REQUIRE(rep3.negative_intervals.size() == 1);
    CHECK(std::fabs(rep3.negative_intervals[0].first - 0.924) <= 0.01);
    CHECK(std::fabs(rep3.negative_intervals[0].second - 3.409) <= 0.01);

    // beta = 1/2 (the text's label) gives a different interval
    auto rep_half = scan_weight_sign(P(3, 10, 0.5, 3), 10.0);
    REQUIRE(rep_half.negative_intervals.size() == 1);
    CHECK(std::fabs(rep_half.negative_intervals[0].first - 1.2595) <= 0.01);
    CHECK(std::fabs(rep_half.negative_intervals[0].second - 2.5258) <= 0.01);

    auto pos = scan_weight_sign(P(1, 2, 1.0, 2), 2.0);
    CHECK(pos.verdict == SignVerdict::Nonnegative);
    CHECK(pos.negative_intervals.empty());
}

TEST_CASE("monotone bracketing: larger beta never lowers the scan minimum") {
    for (auto [l, k, n] : std::array<std::array<long, 3>, 2>{{{3, 7, 2}, {3, 10, 3}}}) {
        double prev = -1e300;
        for (double beta : {0.5, 0.75, 1.0, 1.25}) {
            auto rep = scan_weight_sign(P(l, k, beta, static_cast<int>(n)), 10.0, 600);
            CHECK(rep.min_value >= prev - 1e-12);
            prev = rep.min_value;
        }
    }
}

TEST_CASE("bound search: M1(alpha) = alpha on the identity line") {
    for (auto [l, k] : std::array<std::array<long, 2>, 4>{{{1, 4}, {1, 3}, {1, 2}, {3, 5}}}) {
        RationalOrder a(l, k);
        double lo = std::max(0.05, a.value() - 0.25);
        double hi = a.value() + 0.4;
        auto s = cm_bound_search(1, a, lo, hi, 5e-3, 400);
        CHECK(std::fabs(s.M - a.value()) <= 1e-2);
        // bracket certificate is recorded and consistent
        CHECK(s.beta_neg < s.M);
        CHECK(s.beta_pos > s.M);
        CHECK(s.neg_witness_m < -1e-10);
        CHECK(s.pos_min_value >= -1e-10);
    }
}

TEST_CASE("bound search preconditions") {
    CHECK_THROWS_AS(cm_bound_search(2, RationalOrder(1, 2), 0.5, 2.0, 1e-2), BracketError);
    // beta_lo above the boundary -> no negativity -> bracket error
    CHECK_THROWS_AS(cm_bound_search(1, RationalOrder(1, 2), 0.6, 1.5, 1e-2), BracketError);
    CHECK_THROWS_AS(cm_bound_search(2, RationalOrder(1, 4), 0.3, 0.3, 1e-2), DomainError);
}

TEST_CASE("derivative sign check") {
    std::array<double, 4> grid{0.5, 1.0, 2.0, 5.0};
    // proven-CM critical case
    CHECK(cm_derivative_check(P(1, 2, 1.0, 2), grid, 6));
    // weight negative => CM fails
    CHECK(!cm_derivative_check(P(1, 2, 0.5, 2), grid, 6));
    // one-parameter ML function, classically CM
    CHECK(cm_derivative_check(P(1, 2, 1.0, 1), grid, 6));
    // finite-difference cross-check agrees at low order
    CHECK(cm_derivative_check_fd(P(1, 2, 1.0, 2), grid, 3));
    CHECK_THROWS_AS(cm_derivative_check(P(1, 2, 1.0, 2), grid, 9), DomainError);
}

TEST_CASE("scan verdict consistency with the derivative check") {
    std::array<double, 4> grid{0.5, 1.0, 2.0, 5.0};
    for (auto p : {P(1, 3, 1.0, 2), P(1, 4, 1.0, 2), P(3, 7, 1.0, 2), P(1, 2, 0.75, 2)}) {
        auto rep = scan_weight_sign(p, 10.0, 800);
        if (rep.verdict == SignVerdict::Nonnegative) {
            CHECK(cm_derivative_check(p, grid, 6));
        }
    }
}
