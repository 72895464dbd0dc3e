// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fbrelay/outage.hpp"
#include "oracles.hpp"

using namespace fbrelay;

namespace {

// Rayleigh specialization by direct exponential substitution:
// G(1,x) = e^{-x}, G(2,x) = (1+x) e^{-x}, P(1,x) = 1 - e^{-x}.
double rayleigh_substitution(double omega, const LinearizationParams& p) {
    const double a = std::max(0.0, p.rho_lo);
    const double at = a / omega, bt = p.rho_hi / omega;
    const double head = 0.5 * ((1.0 - std::exp(-bt)) + (1.0 - std::exp(-at)));
    const double dq1 = std::exp(-at) - std::exp(-bt);
    const double dq2 = (1.0 + bt) * std::exp(-bt) - (1.0 + at) * std::exp(-at);
    return head + p.mu / std::sqrt(2.0 * M_PI) * (p.theta * dq1 + omega * dq2);
}

RelaySystem default_system(double m, double power = 10.0, double eta = 0.5) {
    RelayParams p;
    p.total_power = power;
    p.eta = eta;
    p.m_sd = p.m_sr = p.m_rd = m;
    return RelaySystem(p);
}

}  // namespace

TEST_CASE("RelaySystem invariants") {
    RelayParams p;
    CHECK(RelaySystem(p).gamma_sd() == doctest::Approx(5.0));
    CHECK(RelaySystem(p).gamma_sr() == RelaySystem(p).gamma_sd());
    CHECK(RelaySystem(p).gamma_rd() == doctest::Approx(5.0));
    p.eta = 1.0;
    CHECK_THROWS_AS(RelaySystem(p).link_rd(), std::domain_error);
    p.eta = 0.0;
    CHECK_THROWS_AS(RelaySystem{p}, std::domain_error);
    p.eta = 0.5;
    p.n_s = 99;
    CHECK_THROWS_AS(RelaySystem{p}, std::domain_error);
    p.n_s = 500;
    p.beta = 1.0;
    CHECK_THROWS_AS(RelaySystem{p}, std::domain_error);
}

TEST_CASE("srd_code follows the blocklength convention switch") {
    RelayParams p;
    p.n_s = 300;
    p.n_r = 200;
    CHECK(RelaySystem(p).srd_code().n == 300);
    p.srd_blocklength = SrdBlocklength::combined;
    CHECK(RelaySystem(p).srd_code().n == 500);
}

TEST_CASE("closed form vanishes at huge SNR") {
    CHECK(outage_closed_form(FadingLink(2.0, 1e9), CodeSpec(500, 250.0)) < 1e-6);
}

TEST_CASE("closed form reduces to the exponential substitution at m = 1") {
    for (double om : {1.0, 10.0, 100.0})
        for (int n : {100, 500, 2000})
            for (double r : {0.25, 0.5, 1.0})
                for (auto mode :
                     {LinearizationMode::consistent, LinearizationMode::paper_literal}) {
                    const auto p = linearization_params(CodeSpec(n, r * n), mode);
                    const double closed = outage_closed_form(FadingLink(1.0, om), p);
                    const double subst = rayleigh_substitution(om, p);
                    CHECK(std::fabs(closed - subst) <= 1e-12);
                }
}

TEST_CASE("closed form equals quadrature") {
    const FadingLink link(2.0, 10.0);
    const CodeSpec code(500, 250.0);
    for (auto mode : {LinearizationMode::consistent, LinearizationMode::paper_literal})
        CHECK(std::fabs(outage_closed_form(link, code, mode) -
                        outage_quadrature(link, code, mode)) <= 1e-8);
}

TEST_CASE("closed form vs quadrature across a corner grid") {
    for (double m : {0.5, 1.0, 2.0, 3.5, 5.0})
        for (double om : {1.0, 100.0})
            for (int n : {100, 2000})
                for (double r : {0.25, 1.0})
                    for (auto mode :
                         {LinearizationMode::consistent, LinearizationMode::paper_literal}) {
                        const FadingLink link(m, om);
                        const CodeSpec code(n, r * n);
                        const double c = outage_closed_form(link, code, mode);
                        const double q = outage_quadrature(link, code, mode);
                        CHECK(std::fabs(c - q) <= 1e-7);
                    }
}

TEST_CASE("quadrature in the vanishing-rate region") {
    const FadingLink link(2.0, 10.0);
    const double e1 = outage_quadrature(link, CodeSpec(2000, 1.0));
    const double e10 = outage_quadrature(link, CodeSpec(2000, 10.0));
    const double e100 = outage_quadrature(link, CodeSpec(2000, 100.0));
    CHECK(e1 < 1e-2);
    CHECK(e1 < e10);
    CHECK(e10 < e100);
}

TEST_CASE("exact-Q Monte Carlo basics") {
    CHECK_THROWS_AS(outage_exact_mc(FadingLink(1.0, 1.0), CodeSpec(500, 250.0), 100, 1),
                    std::domain_error);
    const auto a = outage_exact_mc(FadingLink(2.0, 10.0), CodeSpec(500, 250.0), 20000, 7);
    const auto b = outage_exact_mc(FadingLink(2.0, 10.0), CodeSpec(500, 250.0), 20000, 7);
    CHECK(a.value == b.value);  // bit-for-bit reproducible
    CHECK(a.method == OutageResult::Method::monte_carlo);
    CHECK(a.ci_halfwidth > 0.0);
    CHECK(a.samples == 20000);
}

TEST_CASE("linearized outage sits inside the exact-MC band") {
    const FadingLink link(3.0, 12.0);
    const CodeSpec code(300, 150.0);
    const auto mc = outage_exact_mc(link, code, 200000, 11);
    const double lin = outage_quadrature(link, code, LinearizationMode::consistent);
    CHECK(std::fabs(lin - mc.value) <= std::max(mc.ci_halfwidth, 2e-3));
}

TEST_CASE("exact-MC regression fixture") {
    // Recorded at build time with this fixed seed; guards the sampler and
    // the exact-Q integrand against silent changes.
    const auto mc = outage_exact_mc(FadingLink(1.0, 10.0), CodeSpec(500, 250.0), 1000000, 20240717);
    CHECK(std::fabs(mc.value - 0.040637259927710195) < 1e-9);
}

TEST_CASE("outage_dt delegates to the single-link closed form") {
    RelayParams p;
    p.eta = 1.0;
    p.m_sd = 1.0;
    p.total_power = 10.0;
    const RelaySystem sys(p);
    CHECK(outage_dt(sys) ==
          doctest::Approx(outage_closed_form(FadingLink(1.0, 10.0), CodeSpec(500, 250.0)))
              .epsilon(1e-15));
}

TEST_CASE("outage_dt monotone in power") {
    double prev = 1.1;
    for (double pw : {1.0, 3.0, 10.0, 30.0, 100.0}) {
        const double e = outage_dt(default_system(2.0, pw));
        CHECK(e <= prev);
        prev = e;
    }
}

TEST_CASE("outage_dt regression against the scheme oracle") {
    const RelaySystem sys = default_system(2.0);
    const auto mc = outage_scheme_mc(sys, Scheme::DT, 200000, 5);
    CHECK(std::fabs(outage_dt(sys) - mc.value) <= std::max(mc.ci_halfwidth, 2e-3));
}

TEST_CASE("outage_sc limiting behaviour") {
    {
        RelayParams p;
        p.gain_sr = 1e-12;  // relay never decodes
        const RelaySystem sys(p);
        CHECK(outage_sc(sys) == doctest::Approx(outage_dt(sys)).epsilon(1e-9));
    }
    {
        RelayParams p;
        p.gain_rd = 1e12;  // relay-destination link never fails
        const RelaySystem sys(p);
        const double ez = outage_closed_form(sys.link_sd(), sys.source_code(), p.mode);
        const double ex = outage_closed_form(sys.link_sr(), sys.source_code(), p.mode);
        CHECK(outage_sc(sys) == doctest::Approx(ez * ex).epsilon(1e-6));
    }
    for (double m : {1.0, 2.0})
        for (double pw : {3.0, 10.0, 30.0}) {
            const RelaySystem sys = default_system(m, pw);
            CHECK(outage_sc(sys) <= outage_dt(sys));
        }
}

TEST_CASE("outage_srd degenerates to the direct link when the relay is silent") {
    RelayParams p;
    p.gain_rd = 1e-12;
    const RelaySystem sys(p);
    const double ez = outage_closed_form(sys.link_sd(), sys.srd_code(), p.mode);
    CHECK(outage_srd(sys) == doctest::Approx(ez).epsilon(1e-5));
}

TEST_CASE("outage_srd closed_m1 agrees with quadrature") {
    for (double eta : {0.3, 0.5, 0.62}) {
        RelayParams p;
        p.m_sd = p.m_sr = p.m_rd = 1.0;
        p.eta = eta;
        const RelaySystem sys(p);
        CHECK(std::fabs(outage_srd(sys, SrdMethod::closed_m1) -
                        outage_srd(sys, SrdMethod::quadrature)) <= 1e-8);
    }
}

TEST_CASE("outage_srd closed_m1 rejects m != 1") {
    CHECK_THROWS_AS(outage_srd(default_system(2.0), SrdMethod::closed_m1), std::invalid_argument);
}

TEST_CASE("outage_srd against a combined-SNR Monte Carlo with the exact integrand") {
    const RelaySystem sys = default_system(2.0);  // gamma_Z = gamma_Y = 5
    const CodeSpec cw = sys.srd_code();
    detail::RandomStream rng(31);
    const FadingLink lz = sys.link_sd(), ly = sys.link_rd();
    const std::size_t n = 200000;
    double mean = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = rng.gamma(lz.m, lz.scale()) + rng.gamma(ly.m, ly.scale());
        const double q = conditional_error_prob(w, cw);
        const double d = q - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (q - mean);
    }
    const double ci3 = 3.0 * std::sqrt(m2 / (n - 1.0) / static_cast<double>(n));
    CHECK(std::fabs(outage_srd(sys) - mean) <= std::max(ci3, 2e-3));
}

TEST_CASE("outage_mrc limiting behaviour") {
    {
        RelayParams p;
        p.gain_sr = 1e-12;  // eps_X -> 1
        const RelaySystem sys(p);
        CHECK(outage_mrc(sys) == doctest::Approx(outage_dt(sys)).epsilon(1e-9));
    }
    {
        RelayParams p;
        p.gain_sr = 1e12;  // eps_X -> 0
        const RelaySystem sys(p);
        CHECK(outage_mrc(sys) == doctest::Approx(outage_srd(sys)).epsilon(1e-6));
    }
}

TEST_CASE("scheme ordering and the SRD single-link bound") {
    for (double m : {1.0, 2.0, 3.0})
        for (double pdb : {5.0, 10.0, 15.0})
            for (double eta : {0.3, 0.5, 0.7}) {
                const RelaySystem sys = default_system(m, std::pow(10.0, pdb / 10.0), eta);
                const double dt = outage_dt(sys);
                const double sc = outage_sc(sys);
                const double mrc = outage_mrc(sys);
                CHECK(mrc <= sc);
                CHECK(sc <= dt);
                // combined signal never loses to the stronger single hop
                const double esrd = outage_srd(sys);
                const double stronger =
                    std::min(outage_closed_form(sys.link_sd(), sys.srd_code(), sys.params().mode),
                             outage_closed_form(sys.link_rd(), sys.srd_code(), sys.params().mode));
                CHECK(esrd <= stronger + 1e-12);
            }
}

TEST_CASE("scheme MC agrees with the analytic chain") {
    const RelaySystem sys = default_system(2.0);
    for (Scheme s : {Scheme::SC, Scheme::MRC}) {
        const auto mc = outage_scheme_mc(sys, s, 200000, 17);
        CHECK(std::fabs(outage_scheme(sys, s) - mc.value) <= std::max(mc.ci_halfwidth, 2e-3));
    }
}

TEST_CASE("clamp_unit") {
    CHECK(detail::clamp_unit(-1e-12, "t") == 0.0);
    CHECK(detail::clamp_unit(1.0 + 1e-12, "t") == 1.0);
    CHECK(detail::clamp_unit(0.25, "t") == 0.25);
}

TEST_CASE("linearized chain tracks the exact oracle across the operating grid") {
    // Scoped to the region where the short-packet approximation is inside
    // its validity window (mean SNR >= 10, n >= 500); at Omega = 1 or
    // n = 100 the intrinsic linearization error exceeds the 2e-3 floor and
    // the acceptance suite reports those corners separately.
    std::uint64_t seed = 555;
    for (double m : {0.5, 1.0, 2.0, 3.5, 5.0})
        for (double om : {10.0, 100.0})
            for (int n : {500, 2000})
                for (double r : {0.25, 0.5, 1.0}) {
                    const FadingLink link(m, om);
                    const CodeSpec code(n, r * n);
                    const double lin = outage_quadrature(link, code, LinearizationMode::consistent);
                    const auto mc = outage_exact_mc(link, code, 200000, ++seed);
                    CHECK(std::fabs(lin - mc.value) <= std::max(mc.ci_halfwidth, 2e-3));
                }
}

TEST_CASE("exact-MC vanishing-rate case") {
    // near-zero rate: the outage region is essentially empty
    const auto mc = outage_exact_mc(FadingLink(2.0, 10.0), CodeSpec(2000, 1.0), 20000, 3);
    CHECK(mc.value <= std::max(mc.ci_halfwidth, 1e-3));
}

TEST_CASE("outage monotonicity in blocklength and payload") {
    // k fixed: longer blocklength lowers the rate and the outage
    for (Scheme s : {Scheme::DT, Scheme::SC, Scheme::MRC}) {
        double prev = 1.1;
        for (int n : {200, 500, 1000, 2000}) {
            RelayParams p;
            p.n_s = p.n_r = n;
            const double e = outage_scheme(RelaySystem(p), s);
            CHECK(e <= prev);
            prev = e;
        }
        // n fixed: more payload raises the rate and the outage
        prev = -1.0;
        for (double k : {100.0, 200.0, 300.0, 400.0}) {
            RelayParams p;
            p.k = k;
            const double e = outage_scheme(RelaySystem(p), s);
            CHECK(e >= prev);
            prev = e;
        }
    }
}

TEST_CASE("outage monotone in the fading figure at fixed mean SNR") {
    // In the operating regime (mean SNR above the pivot) less severe fading
    // lowers the outage.
    const CodeSpec code(500, 250.0);
    for (double om : {5.0, 10.0, 100.0}) {
        double prev = 1.1;
        for (double m : {0.5, 1.0, 2.0, 3.5, 5.0}) {
            const double e = outage_closed_form(FadingLink(m, om), code);
            CHECK(e <= prev);
            prev = e;
        }
    }
}
