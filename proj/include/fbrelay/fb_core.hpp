// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace fbrelay {

/// Code parameters: blocklength n (channel uses) and payload k (bits).
/// The short-packet rate penalty model is only trusted for n >= 100.
struct CodeSpec {
    int n;         // blocklength, >= 100
    double k;      // information bits, > 0

    CodeSpec(int n_, double k_) : n(n_), k(k_) {
        if (n < 100)
            throw std::domain_error("CodeSpec: requires n >= 100");
        if (!(k > 0.0))
            throw std::domain_error("CodeSpec: requires k > 0");
    }

    double rate() const { return k / static_cast<double>(n); }  // bpcu
};

/// Slope convention for the piecewise-linear decode-error approximation.
/// `consistent` matches the true tangent of Q(g(x)) at the SNR pivot and is
/// the default; `paper_literal` reproduces the printed formula
/// mu = sqrt(n/2pi) (e^{2R}-1)^{-1/2}, kept for exact curve replication.
enum class LinearizationMode { consistent, paper_literal };

/// Parameters of the piecewise-linear approximation K(x) ~ Q(g(x)):
/// pivot theta (SNR where the decode error is 1/2), slope scale mu, and the
/// break points rho_lo/rho_hi where K saturates at 1 and 0.
struct LinearizationParams {
    double theta;
    double mu;
    double rho_lo;  // may be negative; clamp to 0 at integration time
    double rho_hi;
    LinearizationMode mode;
};

/// Shannon capacity log2(1 + rho) in bpcu.
double capacity(double rho);

/// Channel dispersion rho(2+rho)/(1+rho)^2; increasing, bounded by 1.
double dispersion(double rho);

/// Maximum coding rate C(rho) - sqrt(V(rho)/n) Qinv(eps) log2(e) in bpcu.
/// May be negative for tiny eps and small n; returned as-is.
double max_rate(int n, double eps, double rho);

/// Normalized decode-error argument g(x) = sqrt(n) (C(x) - R)/(sqrt(V(x)) log2 e).
/// Returns -inf at x = 0 (any positive rate is undecodable at zero SNR).
double decode_error_argument(double x, const CodeSpec& code);

/// Exact (un-linearized) conditional decode-error probability Q(g(x)).
double conditional_error_prob(double x, const CodeSpec& code);

LinearizationParams linearization_params(const CodeSpec& code,
                                         LinearizationMode mode = LinearizationMode::consistent);

/// The piecewise-linear approximation itself: 1 below rho_lo, 0 above
/// rho_hi, 1/2 - mu/sqrt(2pi) (x - theta) between; continuous everywhere.
double k_approx(double x, const LinearizationParams& p);

}  // namespace fbrelay
