// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fbrelay/fb_core.hpp"
#include "fbrelay/special.hpp"
#include "oracles.hpp"

using namespace fbrelay;

namespace {
constexpr double kLog2E = 1.4426950408889634074;
}

TEST_CASE("CodeSpec invariants") {
    CHECK_THROWS_AS(CodeSpec(99, 50.0), std::domain_error);
    CHECK_THROWS_AS(CodeSpec(500, 0.0), std::domain_error);
    CHECK(CodeSpec(500, 250.0).rate() == doctest::Approx(0.5));
}

TEST_CASE("capacity") {
    CHECK(capacity(0.0) == 0.0);
    CHECK(capacity(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(capacity(3.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(capacity(-0.1), std::domain_error);
}

TEST_CASE("dispersion") {
    CHECK(dispersion(0.0) == 0.0);
    CHECK(dispersion(1.0) == doctest::Approx(0.75).epsilon(1e-15));
    double prev = -1.0;
    for (double rho = 0.0; rho < 50.0; rho += 0.5) {
        const double v = dispersion(rho);
        CHECK(v > prev);
        CHECK(v < 1.0);
        prev = v;
    }
    CHECK(dispersion(1e9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(dispersion(-1.0), std::domain_error);
}

TEST_CASE("max_rate pins") {
    CHECK(max_rate(500, 0.5, 10.0) == doctest::Approx(capacity(10.0)).epsilon(1e-12));
    // vanishing penalty as n grows
    const double gap_small = std::fabs(max_rate(1000000, 1e-3, 10.0) - capacity(10.0));
    const double gap_big = std::fabs(max_rate(100, 1e-3, 10.0) - capacity(10.0));
    CHECK(gap_small < gap_big);
    CHECK(gap_small < 5e-3);
    CHECK_THROWS_AS(max_rate(50, 1e-3, 1.0), std::domain_error);
}

TEST_CASE("max_rate round-trips through the AWGN outage bisection") {
    // Find R with Q(sqrt(n) (C - R)/(sqrt(V) log2 e)) = eps by bisection,
    // independently of q_inverse.
    const int n = 500;
    const double eps = 1e-3, rho = 10.0;
    auto awgn_outage = [&](double r) {
        return q_function(std::sqrt(static_cast<double>(n)) * (capacity(rho) - r) /
                          (std::sqrt(dispersion(rho)) * kLog2E));
    };
    double lo = 0.0, hi = capacity(rho);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (awgn_outage(mid) < eps ? lo : hi) = mid;
    }
    CHECK(max_rate(n, eps, rho) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
}

TEST_CASE("max_rate monotonicity") {
    for (double e1 = 1e-6, e2 = 1e-5; e2 < 0.5; e1 = e2, e2 *= 10.0)
        CHECK(max_rate(500, e1, 10.0) < max_rate(500, e2, 10.0));
    for (int n1 = 100, n2 = 200; n2 <= 6400; n1 = n2, n2 *= 2)
        CHECK(max_rate(n1, 1e-3, 10.0) < max_rate(n2, 1e-3, 10.0));
}

TEST_CASE("linearization parameters, both slope conventions") {
    const CodeSpec code(500, 250.0);
    const auto lit = linearization_params(code, LinearizationMode::paper_literal);
    CHECK(lit.theta == doctest::Approx(std::exp2(0.5) - 1.0).epsilon(1e-15));
    CHECK(lit.mu ==
          doctest::Approx(std::sqrt(500.0 / (2.0 * M_PI)) / std::sqrt(std::exp(1.0) - 1.0))
              .epsilon(1e-14));
    const auto con = linearization_params(code, LinearizationMode::consistent);
    CHECK(con.theta == lit.theta);
    for (const auto& p : {lit, con}) {
        CHECK(p.rho_hi - p.rho_lo ==
              doctest::Approx(2.0 * std::sqrt(M_PI / 2.0) / p.mu).epsilon(1e-13));
        CHECK(p.rho_hi - p.theta == doctest::Approx(p.theta - p.rho_lo).epsilon(1e-13));
        CHECK(p.rho_lo < p.theta);
        CHECK(p.theta < p.rho_hi);
    }
}

TEST_CASE("consistent slope equals the tangent of Q(g) at theta") {
    for (double r : {0.25, 0.5, 1.0}) {
        for (int n : {200, 500, 1000}) {
            const CodeSpec code(n, r * n);
            const auto p = linearization_params(code, LinearizationMode::consistent);
            const double h = 1e-6 * p.theta;
            const double fd =
                (decode_error_argument(p.theta + h, code) - decode_error_argument(p.theta - h, code)) /
                (2.0 * h);
            CHECK(p.mu == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("k_approx shape") {
    const CodeSpec code(500, 250.0);
    const auto p = linearization_params(code);
    CHECK(k_approx(p.theta, p) == doctest::Approx(0.5).epsilon(1e-13));
    // continuity at the break points
    const double d = 1e-9;
    CHECK(std::fabs(k_approx(p.rho_lo + d, p) - 1.0) < 1e-8);
    CHECK(std::fabs(k_approx(p.rho_hi - d, p) - 0.0) < 1e-8);
    CHECK(k_approx(std::max(0.0, p.rho_lo), p) <= 1.0);
    double prev = 2.0;
    for (double x = 0.0; x < p.rho_hi * 1.5; x += p.rho_hi / 200.0) {
        const double v = k_approx(x, p);
        CHECK(v <= prev + 1e-15);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK_THROWS_AS(k_approx(-0.1, p), std::domain_error);
}

TEST_CASE("k_approx dense-grid deviation from the exact curve") {
    // Documented observed value: the largest |K - Q(g)| over the linear
    // window is about 0.118 for R = 0.5, n = 500 (consistent slope); the
    // deviation near the pivot stays tiny.
    const CodeSpec code(500, 250.0);
    const auto p = linearization_params(code, LinearizationMode::consistent);
    double worst = 0.0, worst_near_pivot = 0.0;
    const double half = p.rho_hi - p.theta;
    for (int i = 0; i <= 20000; ++i) {
        const double x = std::max(0.0, p.rho_lo) * 0.5 +
                         (p.rho_hi * 1.2 - std::max(0.0, p.rho_lo) * 0.5) * i / 20000.0;
        const double dev = std::fabs(k_approx(x, p) - conditional_error_prob(x, code));
        worst = std::max(worst, dev);
        if (std::fabs(x - p.theta) <= 0.1 * half)
            worst_near_pivot = std::max(worst_near_pivot, dev);
    }
    CHECK(worst > 0.10);
    CHECK(worst < 0.13);
    CHECK(worst_near_pivot < 0.01);
}

TEST_CASE("consistent slope is the better integral fit") {
    // integral of |K - Q(g)| over [max(0, rho_lo), rho_hi], per mode
    for (double r : {0.1, 0.25, 0.5, 0.75, 1.0}) {
        for (int n : {200, 500, 1000}) {
            const CodeSpec code(n, r * n);
            double err[2];
            int idx = 0;
            for (auto mode : {LinearizationMode::consistent, LinearizationMode::paper_literal}) {
                const auto p = linearization_params(code, mode);
                err[idx++] = oracle::simpson(
                    [&](double x) {
                        return std::fabs(k_approx(std::max(x, 0.0), p) -
                                         conditional_error_prob(std::max(x, 0.0), code));
                    },
                    std::max(0.0, p.rho_lo), p.rho_hi, 1e-9);
            }
            CHECK(err[0] < err[1]);
        }
    }
}
