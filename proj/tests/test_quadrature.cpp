// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fbrelay/quadrature.hpp"

using namespace fbrelay;

TEST_CASE("polynomial and trigonometric integrals") {
    auto sq = [](double x) { return x * x; };
    CHECK(integrate(sq, 0.0, 1.0).value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI).value ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -6.0, 6.0).value ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-10));
}

TEST_CASE("orientation and degenerate interval") {
    auto f = [](double x) { return 2.0 * x; };
    CHECK(integrate(f, 1.0, 0.0).value == doctest::Approx(-1.0).epsilon(1e-13));
    CHECK(integrate(f, 0.7, 0.7).value == 0.0);
}

TEST_CASE("semi-infinite transform") {
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_semi_infinite([](double x) { return x * std::exp(-x); }, 0.0).value ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-(x - 2.0)); }, 2.0).value ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("error paths") {
    auto f = [](double x) { return 1.0 / std::sqrt(std::fabs(x - 0.5)); };
    CHECK_THROWS_AS(integrate(f, 0.0, 1.0, Accuracy(1e-12, 1e-12), 8), QuadratureError);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0,
                              std::numeric_limits<double>::infinity()),
                    QuadratureError);
}

TEST_CASE("result metadata") {
    const auto r = integrate([](double x) { return std::cos(x); }, 0.0, 10.0);
    CHECK(r.value == doctest::Approx(std::sin(10.0)).epsilon(1e-11));
    CHECK(r.error_estimate >= 0.0);
    CHECK(r.subdivisions >= 0);
}
