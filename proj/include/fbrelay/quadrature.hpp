// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <stdexcept>

#include "fbrelay/special.hpp"

namespace fbrelay {

class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (G7, K15) on [a, b]. Subdivides the interval with
/// the largest error estimate until sum of errors <= max(abs_tol,
/// rel_tol*|value|). Throws QuadratureError if the budget of subdivisions
/// is exhausted first.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           Accuracy acc = {}, int max_subdivisions = 2000);

/// Integral over [a, inf) via the substitution x = a + t/(1-t), t in [0,1).
QuadratureResult integrate_semi_infinite(const std::function<double(double)>& f, double a,
                                         Accuracy acc = {}, int max_subdivisions = 2000);

}  // namespace fbrelay
