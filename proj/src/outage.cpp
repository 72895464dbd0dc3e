// SPDX-License-Identifier: Apache-2.0
#include "fbrelay/outage.hpp"

#include <cmath>
#include <iostream>

#include "fbrelay/quadrature.hpp"

namespace fbrelay {

namespace {
constexpr double kSqrt2Pi = 2.5066282746310005024;
}

RelaySystem::RelaySystem(const RelayParams& p) : p_(p) {
    if (!(p_.total_power > 0.0))
        throw std::domain_error("RelaySystem: requires total_power > 0");
    if (!(p_.eta > 0.0) || p_.eta > 1.0)
        throw std::domain_error("RelaySystem: requires eta in (0, 1]");
    if (!(p_.noise > 0.0))
        throw std::domain_error("RelaySystem: requires noise > 0");
    if (!(p_.beta > 0.0) || !(p_.beta < 1.0))
        throw std::domain_error("RelaySystem: requires beta in (0, 1)");
    if (!(p_.k > 0.0))
        throw std::domain_error("RelaySystem: requires k > 0");
    if (p_.n_s < 100 || p_.n_r < 100)
        throw std::domain_error("RelaySystem: requires n_s, n_r >= 100");
    // Constructing the always-active links validates m and gamma > 0.
    (void)link_sd();
    (void)link_sr();
}

FadingLink RelaySystem::link_rd() const {
    if (gamma_rd() <= 0.0)
        throw std::domain_error("RelaySystem: relay link has zero SNR (eta == 1)");
    return {p_.m_rd, gamma_rd()};
}

CodeSpec RelaySystem::srd_code() const {
    if (p_.srd_blocklength == SrdBlocklength::combined)
        return {p_.n_s + p_.n_r, p_.k};
    return source_code();
}

namespace detail {

double clamp_unit(double v, const char* context) {
    if (v < 0.0) {
        if (v < -1e-9)
            std::cerr << "fbrelay: numerical health: " << context << " clamped from " << v
                      << " to 0\n";
        return 0.0;
    }
    if (v > 1.0) {
        if (v > 1.0 + 1e-9)
            std::cerr << "fbrelay: numerical health: " << context << " clamped from " << v
                      << " to 1\n";
        return 1.0;
    }
    return v;
}

}  // namespace detail

namespace {

// Q(a, x1) - Q(a, x2) = P(a, x2) - P(a, x1), from whichever tail pair keeps
// the difference free of 1-x cancellation.
double gamma_q_diff(double a, double x1, double x2) {
    const GammaTails t1 = regularized_gamma_pq(a, x1);
    const GammaTails t2 = regularized_gamma_pq(a, x2);
    if (t1.p + t2.p < 1.0)
        return t2.p - t1.p;
    return t1.q - t2.q;
}

}  // namespace

double outage_closed_form(const FadingLink& link, const LinearizationParams& params) {
    const double m = link.m;
    const double omega = link.avg_snr;
    const double a = std::max(0.0, params.rho_lo);
    const double b = params.rho_hi;
    const double at = m * a / omega;
    const double bt = m * b / omega;

    const double head = 0.5 * (regularized_gamma_p(m, bt) + regularized_gamma_p(m, at));
    const double dq_m = gamma_q_diff(m, at, bt);        // Q(m,at) - Q(m,bt) >= 0
    const double dq_m1 = -gamma_q_diff(m + 1.0, at, bt);  // Q(m+1,bt) - Q(m+1,at) <= 0
    const double eps = head + params.mu / kSqrt2Pi * (params.theta * dq_m + omega * dq_m1);
    return detail::clamp_unit(eps, "outage_closed_form");
}

double outage_closed_form(const FadingLink& link, const CodeSpec& code, LinearizationMode mode) {
    return outage_closed_form(link, linearization_params(code, mode));
}

double outage_quadrature(const FadingLink& link, const LinearizationParams& params) {
    const double a = std::max(0.0, params.rho_lo);
    const double b = params.rho_hi;
    const double head = snr_cdf(link, a);
    auto segment = [&link, &params](double x) {
        return (0.5 - params.mu / kSqrt2Pi * (x - params.theta)) * snr_pdf(link, x);
    };
    const Accuracy acc(1e-10, 1e-12);
    double mid_total = 0.0;
    if (a == 0.0 && link.m < 1.0) {
        // x = u^2 removes the x^(m-1) endpoint pole.
        auto sub = [&](double u) { return segment(u * u) * 2.0 * u; };
        mid_total += integrate(sub, 0.0, std::sqrt(params.theta), acc, 4000).value;
    } else {
        mid_total += integrate(segment, a, params.theta, acc, 4000).value;
    }
    mid_total += integrate(segment, params.theta, b, acc, 4000).value;
    return detail::clamp_unit(head + mid_total, "outage_quadrature");
}

double outage_quadrature(const FadingLink& link, const CodeSpec& code, LinearizationMode mode) {
    return outage_quadrature(link, linearization_params(code, mode));
}

OutageResult outage_exact_mc(const FadingLink& link, const CodeSpec& code, std::uint64_t samples,
                             std::uint64_t seed) {
    if (samples < 10000)
        throw std::domain_error("outage_exact_mc: requires samples >= 1e4");
    detail::RandomStream rng(seed);
    const double scale = link.scale();
    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double x = rng.gamma(link.m, scale);
        const double q = conditional_error_prob(x, code);
        const double delta = q - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (q - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    OutageResult r;
    r.value = mean;
    r.method = OutageResult::Method::monte_carlo;
    r.ci_halfwidth = 3.0 * std::sqrt(var / static_cast<double>(samples));
    r.samples = samples;
    return r;
}

double outage_dt(const RelaySystem& sys) {
    return outage_closed_form(sys.link_sd(), sys.source_code(), sys.params().mode);
}

double outage_sc(const RelaySystem& sys) {
    const LinearizationMode mode = sys.params().mode;
    const double ez = outage_closed_form(sys.link_sd(), sys.source_code(), mode);
    const double ex = outage_closed_form(sys.link_sr(), sys.source_code(), mode);
    const double ey = outage_closed_form(sys.link_rd(), sys.relay_code(), mode);
    return detail::clamp_unit(ez * (ex + (1.0 - ex) * ey), "outage_sc");
}

namespace {

double srd_quadrature(const RelaySystem& sys) {
    const LinearizationParams p = linearization_params(sys.srd_code(), sys.params().mode);
    const SnrSumDensity f_w(sys.link_sd(), sys.link_rd());
    const double a = std::max(0.0, p.rho_lo);
    const Accuracy acc(1e-9, 1e-12);
    double eps = 0.0;
    if (a > 0.0)
        eps += integrate([&f_w](double w) { return f_w(w); }, 0.0, a, acc, 4000).value;
    auto segment = [&f_w, &p](double w) {
        return (0.5 - p.mu / kSqrt2Pi * (w - p.theta)) * f_w(w);
    };
    eps += integrate(segment, a, p.theta, acc, 4000).value;
    eps += integrate(segment, p.theta, p.rho_hi, acc, 4000).value;
    return eps;
}

// Both fading figures 1: W is hypoexponential and every exponential mixture
// component integrates like a Rayleigh link, so the combined outage is the
// scale-weighted mixture of single-link closed forms. Equal scales reduce to
// Gamma(2, s), i.e. a synthetic m = 2 link with mean 2s.
double srd_closed_m1(const RelaySystem& sys) {
    const LinearizationParams p = linearization_params(sys.srd_code(), sys.params().mode);
    const double oz = sys.gamma_sd();
    const double oy = sys.gamma_rd();
    if (std::fabs(oz - oy) <= 1e-9 * std::max(oz, oy))
        return outage_closed_form(FadingLink(2.0, oz + oy), p);
    const double wz = oz / (oz - oy);
    const double wy = -oy / (oz - oy);
    return wz * outage_closed_form(FadingLink(1.0, oz), p) +
           wy * outage_closed_form(FadingLink(1.0, oy), p);
}

}  // namespace

double outage_srd(const RelaySystem& sys, SrdMethod method) {
    if (method == SrdMethod::closed_m1) {
        if (sys.params().m_sd != 1.0 || sys.params().m_rd != 1.0)
            throw std::invalid_argument("outage_srd: closed_m1 requires m_sd = m_rd = 1");
        return detail::clamp_unit(srd_closed_m1(sys), "outage_srd(closed_m1)");
    }
    return detail::clamp_unit(srd_quadrature(sys), "outage_srd");
}

double outage_mrc(const RelaySystem& sys) {
    const LinearizationMode mode = sys.params().mode;
    const double ez = outage_closed_form(sys.link_sd(), sys.source_code(), mode);
    const double ex = outage_closed_form(sys.link_sr(), sys.source_code(), mode);
    const double esrd = outage_srd(sys);
    return detail::clamp_unit(ez * ex + (1.0 - ex) * esrd, "outage_mrc");
}

double outage_scheme(const RelaySystem& sys, Scheme scheme) {
    switch (scheme) {
        case Scheme::DT: return outage_dt(sys);
        case Scheme::SC: return outage_sc(sys);
        case Scheme::MRC: return outage_mrc(sys);
    }
    throw std::logic_error("outage_scheme: unknown scheme");
}

OutageResult outage_scheme_mc(const RelaySystem& sys, Scheme scheme, std::uint64_t samples,
                              std::uint64_t seed) {
    if (samples < 10000)
        throw std::domain_error("outage_scheme_mc: requires samples >= 1e4");
    detail::RandomStream rng(seed);
    const CodeSpec cs = sys.source_code();
    const CodeSpec cr = sys.relay_code();
    const CodeSpec cw = sys.srd_code();
    const FadingLink lz = sys.link_sd();
    const FadingLink lx = sys.link_sr();
    const bool needs_relay = scheme != Scheme::DT;
    const double sy_scale = needs_relay ? sys.link_rd().scale() : 0.0;
    const double my = sys.params().m_rd;
    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        const double z = rng.gamma(lz.m, lz.scale());
        double trial;
        if (scheme == Scheme::DT) {
            trial = conditional_error_prob(z, cs);
        } else {
            const double x = rng.gamma(lx.m, lx.scale());
            const double y = rng.gamma(my, sy_scale);
            const double qz = conditional_error_prob(z, cs);
            const double qx = conditional_error_prob(x, cs);
            if (scheme == Scheme::SC) {
                const double qy = conditional_error_prob(y, cr);
                trial = qz * (qx + (1.0 - qx) * qy);
            } else {
                const double qw = conditional_error_prob(z + y, cw);
                trial = qz * qx + (1.0 - qx) * qw;
            }
        }
        const double delta = trial - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (trial - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    OutageResult r;
    r.value = mean;
    r.method = OutageResult::Method::monte_carlo;
    r.ci_halfwidth = 3.0 * std::sqrt(var / static_cast<double>(samples));
    r.samples = samples;
    return r;
}

}  // namespace fbrelay
