// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "fbrelay/outage.hpp"

namespace fbrelay {

/// Raised when no blocklength budget up to the search ceiling meets the
/// reliability target.
class InfeasibleError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct EtaSweepResult {
    Scheme scheme = Scheme::SC;
    std::vector<double> eta_grid;
    std::vector<double> outages;
    double eta_star = 0.0;
    double outage_star = 0.0;
};

struct DelayPlan {
    int n_s = 0;
    int n_r = 0;
    double delta = 0.0;            // seconds, = symbol_time * (n_s + n_r)
    double achieved_outage = 0.0;  // <= target_outage
    double target_outage = 0.0;
    double symbol_time = 0.0;      // T_s, seconds
};

/// Sweeps the power-allocation factor over [0.05, 0.99] with the given grid
/// step, then golden-section refines around the grid argmin to 1e-4 in eta.
/// Returns the full sweep plus the refined optimum; outage_star never
/// exceeds any grid outage.
EtaSweepResult optimize_eta(const RelaySystem& sys, Scheme scheme, double grid_step = 0.01);

/// Minimum-delay plan: minimizes symbol_time * (n_s + n_r) over integer
/// pairs n_s, n_r in [100, 3000] (even total, resolution 2) subject to the
/// scheme outage meeting target_outage. With equal_split, n_s = n_r is
/// enforced. Outer bisection on the total budget (the feasibility predicate
/// is monotone in the budget); inner exhaustive middle-out split scan.
/// Throws InfeasibleError when the ceiling budget of 6000 cannot meet the
/// target, and std::logic_error if the minimality certificate detects a
/// non-monotone outage (an internal bug, not a user error).
DelayPlan optimize_blocklengths(const RelaySystem& sys, Scheme scheme, double target_outage,
                                double symbol_time, bool equal_split);

/// Success-probability matrix 1 - eps(n, k); rows follow n_grid (n_s = n_r
/// = n), columns follow k_grid.
std::vector<std::vector<double>> reliability_contour(const RelaySystem& sys_template,
                                                     Scheme scheme,
                                                     const std::vector<int>& n_grid,
                                                     const std::vector<double>& k_grid);

}  // namespace fbrelay
