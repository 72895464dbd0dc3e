// SPDX-License-Identifier: Apache-2.0
#include "fbrelay/fb_core.hpp"

#include <cmath>
#include <limits>

#include "fbrelay/special.hpp"

namespace fbrelay {

namespace {
constexpr double kLog2E = 1.4426950408889634074;  // log2(e)
constexpr double kSqrt2Pi = 2.5066282746310005024;
constexpr double kHalfWidthFactor = 1.2533141373155002512;  // sqrt(pi/2)
}  // namespace

double capacity(double rho) {
    if (rho < 0.0)
        throw std::domain_error("capacity: requires rho >= 0");
    return std::log2(1.0 + rho);
}

double dispersion(double rho) {
    if (rho < 0.0)
        throw std::domain_error("dispersion: requires rho >= 0");
    return rho * (2.0 + rho) / ((1.0 + rho) * (1.0 + rho));
}

double max_rate(int n, double eps, double rho) {
    if (n < 100)
        throw std::domain_error("max_rate: requires n >= 100");
    return capacity(rho) - std::sqrt(dispersion(rho) / n) * q_inverse(eps) * kLog2E;
}

double decode_error_argument(double x, const CodeSpec& code) {
    if (x <= 0.0)
        return -std::numeric_limits<double>::infinity();
    const double v = dispersion(x);
    return std::sqrt(static_cast<double>(code.n)) * (capacity(x) - code.rate()) /
           (std::sqrt(v) * kLog2E);
}

double conditional_error_prob(double x, const CodeSpec& code) {
    const double g = decode_error_argument(x, code);
    return std::isinf(g) && g < 0.0 ? 1.0 : q_function(g);
}

LinearizationParams linearization_params(const CodeSpec& code, LinearizationMode mode) {
    const double rate = code.rate();
    const double theta = std::exp2(rate) - 1.0;
    double mu;
    if (mode == LinearizationMode::paper_literal) {
        mu = std::sqrt(code.n / (2.0 * M_PI)) / std::sqrt(std::expm1(2.0 * rate));
    } else {
        // True tangent slope of Q(g(x)) at theta: with 1+theta = 2^R,
        // (1+theta) sqrt(V(theta)) = sqrt(2^{2R} - 1).
        mu = std::sqrt(static_cast<double>(code.n)) / std::sqrt(std::exp2(2.0 * rate) - 1.0);
    }
    const double half = kHalfWidthFactor / mu;
    return {theta, mu, theta - half, theta + half, mode};
}

double k_approx(double x, const LinearizationParams& p) {
    if (x < 0.0)
        throw std::domain_error("k_approx: requires x >= 0");
    if (x <= p.rho_lo) return 1.0;
    if (x >= p.rho_hi) return 0.0;
    return 0.5 - p.mu / kSqrt2Pi * (x - p.theta);
}

}  // namespace fbrelay
