#include <doctest.h>

#include <cmath>

#include "mlrfun/errors.hpp"
#include "mlrfun/quadrature.hpp"

using namespace mlr;

TEST_CASE("semiaxis: plain exponential") {
    auto r = integrate_semiaxis([](double y) { return std::exp(-y); },
                                [](double y) { return std::exp(-y); }, 1e-10);
    CHECK(std::fabs(r.value - 1.0) <= 1e-10);
    CHECK(r.evaluations > 0);
}

TEST_CASE("semiaxis: y e^{-y^2} = 1/2") {
    auto r = integrate_semiaxis([](double y) { return y * std::exp(-y * y); },
                                [](double y) { return (y + 1.0) * std::exp(-y * y); }, 1e-10);
    CHECK(std::fabs(r.value - 0.5) <= 1e-10);
}

TEST_CASE("finite with inverse-sqrt endpoint singularity") {
    // int_0^2 2/(pi sqrt(4-y^2)) dy = 1 (arcsine antiderivative)
    auto f = [](const QuadPoint& pt) {
        return 2.0 / (M_PI * std::sqrt(pt.dist_hi * (4.0 - pt.dist_hi)));
    };
    auto r = integrate_finite(f, 0.0, 2.0, 1e-8);
    CHECK(std::fabs(r.value - 1.0) <= 1e-8);
}

TEST_CASE("finite: smooth polynomial is near-exact") {
    auto r = integrate_finite([](const QuadPoint& pt) { return pt.y * pt.y; }, 0.0, 3.0, 1e-12);
    CHECK(std::fabs(r.value - 9.0) <= 1e-11);
}

TEST_CASE("self-consistency: halving tol moves the value by less than the estimate") {
    auto f = [](double y) { return std::cos(y) * std::exp(-0.7 * y); };
    auto bound = [](double y) { return std::exp(-0.7 * y); };
    for (double tol : {1e-6, 1e-8, 1e-10}) {
        auto a = integrate_semiaxis(f, bound, tol);
        auto b = integrate_semiaxis(f, bound, tol / 2.0);
        CHECK(std::fabs(a.value - b.value) <= a.abs_error_estimate + 1e-15);
    }
    // exact value: int_0^inf cos(y) e^{-0.7y} dy = 0.7/(1+0.49)
    auto c = integrate_semiaxis(f, bound, 1e-11);
    CHECK(std::fabs(c.value - 0.7 / 1.49) <= 1e-10);
}

TEST_CASE("tail bound failure raises") {
    CHECK_THROWS_AS(integrate_semiaxis([](double) { return 1.0; },
                                       [](double) { return 1.0; }, 1e-8),
                    ToleranceError);
}
