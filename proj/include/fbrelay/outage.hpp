// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "fbrelay/channel.hpp"
#include "fbrelay/fb_core.hpp"

namespace fbrelay {

enum class Scheme { DT, SC, MRC };

/// Which blocklength builds the combined-signal (SRD) linearization when
/// n_s != n_r. The source convention reuses the broadcast phase's n_s; the
/// alternative uses n_s + n_r. Neither is endorsed; source_phase is the
/// default.
enum class SrdBlocklength { source_phase, combined };

struct RelayParams {
    double total_power = 10.0;  // P, linear and noise-normalized
    double eta = 0.5;           // source power fraction, (0, 1]
    double noise = 1.0;         // N0
    double m_sd = 2.0;          // Nakagami figures: S-D (Z), S-R (X), R-D (Y)
    double m_sr = 2.0;
    double m_rd = 2.0;
    double gain_sd = 1.0;       // mean-square fading gains E|h|^2 (unit by default)
    double gain_sr = 1.0;
    double gain_rd = 1.0;
    int n_s = 500;              // channel uses per phase
    int n_r = 500;
    double k = 250.0;           // information bits
    double beta = 0.5;          // relay position, recorded only (no path loss)
    LinearizationMode mode = LinearizationMode::consistent;
    SrdBlocklength srd_blocklength = SrdBlocklength::source_phase;
};

/// Full relaying scenario. Per-link average SNRs derive from the power split:
/// gamma_Z = gamma_X = eta P / N0 and gamma_Y = (1-eta) P / N0 (times the
/// unit-default mean-square gains).
class RelaySystem {
  public:
    explicit RelaySystem(const RelayParams& p);

    const RelayParams& params() const { return p_; }

    double gamma_sd() const { return p_.eta * p_.total_power / p_.noise * p_.gain_sd; }
    double gamma_sr() const { return p_.eta * p_.total_power / p_.noise * p_.gain_sr; }
    double gamma_rd() const { return (1.0 - p_.eta) * p_.total_power / p_.noise * p_.gain_rd; }

    FadingLink link_sd() const { return {p_.m_sd, gamma_sd()}; }
    FadingLink link_sr() const { return {p_.m_sr, gamma_sr()}; }
    FadingLink link_rd() const;  // throws if eta == 1 (relay has no power)

    CodeSpec source_code() const { return {p_.n_s, p_.k}; }
    CodeSpec relay_code() const { return {p_.n_r, p_.k}; }
    CodeSpec srd_code() const;

  private:
    RelayParams p_;
};

struct OutageResult {
    double value = 0.0;
    enum class Method { closed_form, quadrature, monte_carlo } method = Method::closed_form;
    double ci_halfwidth = 0.0;   // 3-sigma, monte_carlo only
    std::uint64_t samples = 0;   // monte_carlo only
};

/// Single-link outage by the closed form: with a = max(0, rho_lo), b = rho_hi,
/// at = m a/Omega, bt = m b/Omega,
///   eps = 1/2 [P(m,bt) + P(m,at)]
///       + mu/sqrt(2pi) [ theta (G(m,at) - G(m,bt))/G(m)
///                       + Omega (G(1+m,bt) - G(1+m,at))/G(1+m) ],
/// clamped to [0,1]. Clamping beyond 1e-9 logs a numerical-health warning.
double outage_closed_form(const FadingLink& link, const CodeSpec& code,
                          LinearizationMode mode = LinearizationMode::consistent);
double outage_closed_form(const FadingLink& link, const LinearizationParams& params);

/// Same outage by adaptive quadrature of k_approx(x) f_X(x) over [0, rho_hi],
/// split at max(0, rho_lo) and theta; absolute tolerance 1e-10.
double outage_quadrature(const FadingLink& link, const CodeSpec& code,
                         LinearizationMode mode = LinearizationMode::consistent);
double outage_quadrature(const FadingLink& link, const LinearizationParams& params);

/// Monte Carlo of the exact (un-linearized) conditional error Q(g(X)) over
/// sampled SNRs; the oracle for everything linearized. Reports the 3-sigma
/// confidence half-width.
OutageResult outage_exact_mc(const FadingLink& link, const CodeSpec& code,
                             std::uint64_t samples, std::uint64_t seed);

/// Direct transmission: closed form on the S-D link with the source code.
double outage_dt(const RelaySystem& sys);

/// Selection combining: eps_Z (eps_X + (1 - eps_X) eps_Y); eps_Z and eps_X
/// use n_s, eps_Y uses n_r.
double outage_sc(const RelaySystem& sys);

enum class SrdMethod { quadrature, closed_m1 };

/// Outage of the coherently combined S->D plus R->D signal W = Z + Y:
/// int_0^a f_W + int_a^b (1/2 - mu/sqrt(2pi) (w - theta)) f_W(w) dw with the
/// linearization built from srd_code(). closed_m1 is the elementary
/// antiderivative route, valid only when both fading figures are 1.
double outage_srd(const RelaySystem& sys, SrdMethod method = SrdMethod::quadrature);

/// Maximum ratio combining: eps_Z eps_X + (1 - eps_X) eps_SRD (the printed
/// conditional form times eps_Z, algebraically simplified so eps_Z = 0 needs
/// no branch).
double outage_mrc(const RelaySystem& sys);

/// Scheme outage for a given scheme tag (dispatch helper).
double outage_scheme(const RelaySystem& sys, Scheme scheme);

/// Joint Monte Carlo of a full scheme with exact-Q conditional decode errors
/// on every branch; the scheme-level oracle.
OutageResult outage_scheme_mc(const RelaySystem& sys, Scheme scheme, std::uint64_t samples,
                              std::uint64_t seed);

namespace detail {
/// Clamp to [0,1]; exceedances beyond 1e-9 emit a numerical-health warning
/// on stderr (once per call site context string).
double clamp_unit(double v, const char* context);
}  // namespace detail

}  // namespace fbrelay
