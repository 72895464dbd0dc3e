// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fbrelay/special.hpp"

namespace fbrelay {

/// One wireless hop. The instantaneous SNR of a Nakagami-m link with fading
/// figure m and mean SNR avg_snr is Gamma(shape m, scale avg_snr/m).
struct FadingLink {
    double m;        // Nakagami fading figure, >= 0.5
    double avg_snr;  // mean instantaneous SNR (linear), > 0

    FadingLink(double m_, double avg_snr_) : m(m_), avg_snr(avg_snr_) {
        if (!(m >= 0.5))
            throw std::domain_error("FadingLink: requires m >= 0.5");
        if (!(avg_snr > 0.0))
            throw std::domain_error("FadingLink: requires avg_snr > 0");
    }

    double scale() const { return avg_snr / m; }  // Gamma scale
};

/// Reproducible sample request: identical (seed, count) produce identical
/// samples bit-for-bit on one platform.
struct SnrSampleStream {
    std::uint64_t seed = 0;
    std::size_t count = 1;
};

/// Gamma(m, avg_snr/m) PDF of the instantaneous SNR at x >= 0.
double snr_pdf(const FadingLink& link, double x);

/// CDF, equals regularized_gamma_p(m, m*x/avg_snr).
double snr_cdf(const FadingLink& link, double x);

namespace detail {

/// Deterministic sampler: mt19937_64 + hand-rolled transforms, so results do
/// not depend on the standard library's unspecified distribution algorithms.
/// Normals via Marsaglia's polar method; Gamma via Marsaglia-Tsang, with the
/// u^(1/a) boost for shape < 1.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform();              // (0, 1), 53-bit
    double normal();               // standard normal
    double gamma(double shape, double scale);

  private:
    std::mt19937_64 engine_;
};

}  // namespace detail

/// count i.i.d. Gamma(m, avg_snr/m) draws.
std::vector<double> sample_snr(const FadingLink& link, const SnrSampleStream& stream);

/// Density of W = Z + Y, the sum of the two links' independent instantaneous
/// SNRs.  For equal Gamma scales this is Gamma(m_Z+m_Y, common scale);
/// otherwise the confluent-hypergeometric form
///   f_W(w) = w^(mZ+mY-1) e^(-w/s2) s1^(-m1) s2^(-m2)
///            * 1F1r(m1; mZ+mY; w (1/s2 - 1/s1))
/// evaluated in log space, with the links ordered so the 1F1 argument is
/// positive.  Construction verifies unit mass numerically and throws if the
/// density does not integrate to 1.
class SnrSumDensity {
  public:
    SnrSumDensity(const FadingLink& z, const FadingLink& y);

    double operator()(double w) const;
    bool equal_scale() const { return equal_scale_; }
    double shape_sum() const { return shape_sum_; }
    /// Mean of W (= sum of the two links' mean SNRs).
    double mean() const { return mean_; }
    /// A point beyond which the upper tail mass is < ~1e-14; used as a
    /// practical upper integration limit.
    double tail_cutoff() const;

  private:
    double shape1_, shape2_;    // 1F1 numerator shape, companion shape
    double s1_, s2_;            // scales, s1 >= s2
    double shape_sum_;
    double mean_;
    double log_norm_;           // log of the constant prefactor
    bool equal_scale_;
    bool dominant_only_;        // one component's mean is negligible
};

/// Pointwise sum-SNR PDF (constructs a validated SnrSumDensity per call).
double sum_snr_pdf(const FadingLink& link_z, const FadingLink& link_y, double w);

/// Independent check of the sum density: numeric convolution
/// int_0^w f_Z(t) f_Y(w-t) dt by adaptive quadrature.
double sum_snr_pdf_oracle(const FadingLink& link_z, const FadingLink& link_y, double w);

namespace detail {

/// Numeric unit-mass check used by SnrSumDensity's constructor; exposed so
/// the rejection path is testable against a deliberately broken density.
bool has_unit_mass(const std::function<double(double)>& pdf, double upper, double tol);

}  // namespace detail

}  // namespace fbrelay
