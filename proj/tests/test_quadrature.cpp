#include "doctest.h"

#include <cmath>

#include "sagin/quadrature.hpp"

using namespace sagin;

TEST_CASE("simpson integrates cubics exactly") {
    const QuadratureConfig q{2, QuadratureRule::Simpson};
    const double v = integrate([](double x) { return 4.0 * x * x * x - 3.0 * x * x + 2.0; }, -1.0, 2.0, q);
    // antiderivative x^4 - x^3 + 2x
    CHECK(v == doctest::Approx((16.0 - 8.0 + 4.0) - (1.0 + 1.0 - 2.0)).epsilon(1e-14));
}

TEST_CASE("midpoint integrates linear functions exactly") {
    const QuadratureConfig q{3, QuadratureRule::Midpoint};
    CHECK(integrate([](double x) { return 2.0 * x + 1.0; }, 0.0, 3.0, q) == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("convergence orders") {
    auto err = [](std::size_t n, QuadratureRule rule) {
        return std::abs(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, {n, rule}) - (std::exp(1.0) - 1.0));
    };
    CHECK(err(16, QuadratureRule::Midpoint) / err(32, QuadratureRule::Midpoint) == doctest::Approx(4.0).epsilon(0.01));
    CHECK(err(16, QuadratureRule::Simpson) / err(32, QuadratureRule::Simpson) == doctest::Approx(16.0).epsilon(0.01));
}

TEST_CASE("invalid panel counts") {
    auto f = [](double x) { return x; };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, {3, QuadratureRule::Simpson}), std::invalid_argument);
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, {1, QuadratureRule::Midpoint}), std::invalid_argument);
}
