// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace fbrelay {

/// Tolerance pair used by the adaptive integration routines.
struct Accuracy {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;

    Accuracy() = default;
    Accuracy(double abs_t, double rel_t) : abs_tol(abs_t), rel_tol(rel_t) {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::domain_error("Accuracy: tolerances must be positive");
    }
};

/// Raised when an iterative series or continued fraction exhausts its
/// iteration budget before reaching tolerance.
class ConvergenceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// ln Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 terms),
/// relative error well below 1e-13 over [1e-3, 1e6].
double ln_gamma(double x);

/// Upper incomplete gamma Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt,
/// a > 0, x >= 0. Gamma(a, 0) = Gamma(a).
double upper_incomplete_gamma(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Gamma(a,x)/Gamma(a),
/// nondecreasing in x, P(a, 0) = 0, limit 1 as x -> inf.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double regularized_gamma_q(double a, double x);

/// Both regularized tails at once. The pair is computed from the side
/// (series or continued fraction) that is accurate for the given (a, x),
/// so differences of either component between two x values stay accurate.
struct GammaTails {
    double p;  // P(a, x)
    double q;  // Q(a, x)
};
GammaTails regularized_gamma_pq(double a, double x);

/// Gaussian upper-tail probability Q(x) = P[N(0,1) > x].
double q_function(double x);

/// Inverse of q_function on (0, 1); strictly decreasing, q_inverse(0.5) = 0.
double q_inverse(double p);

/// Regularized confluent hypergeometric 1F1(a; b; z) / Gamma(b) for b > 0.
/// Direct Taylor series with compensated summation; the Kummer transform
/// 1F1(a;b;z) = e^z 1F1(b-a;b;-z) is applied for z < 0 so all summed terms
/// are positive. Throws ConvergenceError if the series does not settle
/// within the iteration budget.
double hyp1f1_regularized(double a, double b, double z);

/// log of hyp1f1_regularized for z >= 0 (where the value is positive).
/// Safe against overflow of the unscaled series for large z.
double ln_hyp1f1_regularized(double a, double b, double z);

}  // namespace fbrelay
