// SPDX-License-Identifier: Apache-2.0
#include "fbrelay/channel.hpp"

#include <cmath>
#include <limits>

#include "fbrelay/quadrature.hpp"

namespace fbrelay {

double snr_pdf(const FadingLink& link, double x) {
    if (x < 0.0)
        throw std::domain_error("snr_pdf: requires x >= 0");
    const double s = link.scale();
    if (x == 0.0) {
        if (link.m > 1.0) return 0.0;
        if (link.m == 1.0) return 1.0 / s;
        return std::numeric_limits<double>::infinity();  // m < 1: integrable pole
    }
    const double ln_f = (link.m - 1.0) * std::log(x) - x / s - link.m * std::log(s) - ln_gamma(link.m);
    return std::exp(ln_f);
}

double snr_cdf(const FadingLink& link, double x) {
    if (x < 0.0)
        throw std::domain_error("snr_cdf: requires x >= 0");
    return regularized_gamma_p(link.m, x / link.scale());
}

namespace detail {

double RandomStream::uniform() {
    // 53-bit mantissa, strictly inside (0, 1).
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    // Marsaglia polar method.
    while (true) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0)
            return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double RandomStream::gamma(double shape, double scale) {
    if (shape < 1.0) {
        // Marsaglia-Tsang boost: X_a = X_{a+1} * U^{1/a}.
        const double x = gamma(shape + 1.0, scale);
        return x * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * (x * x) * (x * x))
            return d * v * scale;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
            return d * v * scale;
    }
}

}  // namespace detail

std::vector<double> sample_snr(const FadingLink& link, const SnrSampleStream& stream) {
    if (stream.count < 1)
        throw std::domain_error("sample_snr: requires count >= 1");
    detail::RandomStream rng(stream.seed);
    std::vector<double> out(stream.count);
    const double s = link.scale();
    for (auto& v : out)
        v = rng.gamma(link.m, s);
    return out;
}

namespace detail {

bool has_unit_mass(const std::function<double(double)>& pdf, double upper, double tol) {
    const auto mass = integrate(pdf, 0.0, upper, Accuracy(tol * 0.1, 1e-12), 4000);
    return std::fabs(mass.value - 1.0) <= tol;
}

}  // namespace detail

SnrSumDensity::SnrSumDensity(const FadingLink& z, const FadingLink& y) {
    double a1 = z.m, s1 = z.scale();
    double a2 = y.m, s2 = y.scale();
    // Order so the decaying exponential carries the smaller scale and the
    // 1F1 argument w*(1/s2 - 1/s1) is nonnegative.
    if (s1 < s2) {
        std::swap(a1, a2);
        std::swap(s1, s2);
    }
    shape1_ = a1;
    shape2_ = a2;
    s1_ = s1;
    s2_ = s2;
    shape_sum_ = a1 + a2;
    mean_ = z.avg_snr + y.avg_snr;
    equal_scale_ = std::fabs(s1 - s2) <= 1e-12 * s1;
    // A component whose mean is negligible against the other shifts the sum
    // by a vanishing amount; the dominant Gamma density alone is then exact
    // to far better than the unit-mass tolerance, and the series argument
    // w (1/s2 - 1/s1) would exceed any iteration budget.
    dominant_only_ = !equal_scale_ && a2 * s2 <= 1e-9 * a1 * s1;
    log_norm_ = -a1 * std::log(s1) - a2 * std::log(s2);

    const double tol = 1e-6;
    if (!detail::has_unit_mass([this](double w) { return (*this)(w); }, tail_cutoff(), tol))
        throw std::logic_error("SnrSumDensity: density failed the unit-mass check");
}

double SnrSumDensity::tail_cutoff() const {
    // Gamma-like tail on the slow scale s1: mean + many std deviations.
    const double spread = s1_ * (shape_sum_ + 12.0 * std::sqrt(shape_sum_) + 60.0);
    return spread;
}

double SnrSumDensity::operator()(double w) const {
    if (w < 0.0)
        throw std::domain_error("sum_snr_pdf: requires w >= 0");
    if (w == 0.0) {
        if (shape_sum_ > 1.0) return 0.0;
        // both shapes at the 0.5 floor: Gamma(1, s) density at 0
        return std::exp(log_norm_);
    }
    if (dominant_only_) {
        const double ln_f =
            (shape1_ - 1.0) * std::log(w) - w / s1_ - shape1_ * std::log(s1_) - ln_gamma(shape1_);
        return std::exp(ln_f);
    }
    if (equal_scale_) {
        const double ln_f = (shape_sum_ - 1.0) * std::log(w) - w / s1_ -
                            shape_sum_ * std::log(s1_) - ln_gamma(shape_sum_);
        return std::exp(ln_f);
    }
    const double zarg = w * (1.0 / s2_ - 1.0 / s1_);
    const double ln_f = (shape_sum_ - 1.0) * std::log(w) - w / s2_ + log_norm_ +
                        ln_hyp1f1_regularized(shape1_, shape_sum_, zarg);
    return std::exp(ln_f);
}

double sum_snr_pdf(const FadingLink& link_z, const FadingLink& link_y, double w) {
    return SnrSumDensity(link_z, link_y)(w);
}

double sum_snr_pdf_oracle(const FadingLink& link_z, const FadingLink& link_y, double w) {
    if (w < 0.0)
        throw std::domain_error("sum_snr_pdf_oracle: requires w >= 0");
    if (w == 0.0) {
        // Limit of the convolution: 0 once the combined shape exceeds 1,
        // else (both shapes at the 0.5 floor) 1/sqrt(s_z s_y).
        if (link_z.m + link_y.m > 1.0) return 0.0;
        return 1.0 / std::sqrt(link_z.scale() * link_y.scale());
    }
    auto integrand = [&](double t) { return snr_pdf(link_z, t) * snr_pdf(link_y, w - t); };
    // Substitute t = w u^2 near t=0 and t = w(1 - u^2) near t=w when a shape
    // is below 1 so the endpoint singularities integrate cleanly.
    const double mz = link_z.m, my = link_y.m;
    const double mid = 0.5 * w;
    double left, right;
    if (mz < 1.0) {
        auto g = [&](double u) { return integrand(w * u * u) * 2.0 * w * u; };
        left = integrate(g, 0.0, std::sqrt(mid / w), Accuracy(1e-9, 1e-9), 4000).value;
    } else {
        left = integrate(integrand, 0.0, mid, Accuracy(1e-9, 1e-9), 4000).value;
    }
    if (my < 1.0) {
        auto g = [&](double u) { return integrand(w * (1.0 - u * u)) * 2.0 * w * u; };
        right = integrate(g, 0.0, std::sqrt(mid / w), Accuracy(1e-9, 1e-9), 4000).value;
    } else {
        right = integrate(integrand, mid, w, Accuracy(1e-9, 1e-9), 4000).value;
    }
    return left + right;
}

}  // namespace fbrelay
