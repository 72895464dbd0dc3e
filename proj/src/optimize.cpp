// SPDX-License-Identifier: Apache-2.0
#include "fbrelay/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace fbrelay {

namespace {

RelaySystem with_eta(const RelaySystem& sys, double eta) {
    RelayParams p = sys.params();
    p.eta = eta;
    return RelaySystem(p);
}

RelaySystem with_blocklengths(const RelaySystem& sys, int n_s, int n_r) {
    RelayParams p = sys.params();
    p.n_s = n_s;
    p.n_r = n_r;
    return RelaySystem(p);
}

}  // namespace

EtaSweepResult optimize_eta(const RelaySystem& sys, Scheme scheme, double grid_step) {
    if (!(grid_step > 0.0) || grid_step > 0.1)
        throw std::domain_error("optimize_eta: requires grid_step in (0, 0.1]");
    constexpr double kEtaLo = 0.05;
    constexpr double kEtaHi = 0.99;

    EtaSweepResult r;
    r.scheme = scheme;
    for (double e = kEtaLo; e < kEtaHi - 1e-12; e += grid_step)
        r.eta_grid.push_back(e);
    r.eta_grid.push_back(kEtaHi);

    auto objective = [&](double eta) { return outage_scheme(with_eta(sys, eta), scheme); };

    std::size_t best = 0;
    r.outages.reserve(r.eta_grid.size());
    for (std::size_t i = 0; i < r.eta_grid.size(); ++i) {
        r.outages.push_back(objective(r.eta_grid[i]));
        if (r.outages[i] < r.outages[best]) best = i;
    }

    // Golden-section refinement inside the bracket formed by the argmin's
    // neighbours.
    double a = r.eta_grid[best > 0 ? best - 1 : 0];
    double b = r.eta_grid[std::min(best + 1, r.eta_grid.size() - 1)];
    double best_eta = r.eta_grid[best];
    double best_val = r.outages[best];
    constexpr double kInvPhi = 0.6180339887498949;
    double c = b - (b - a) * kInvPhi;
    double d = a + (b - a) * kInvPhi;
    double fc = objective(c), fd = objective(d);
    while (b - a > 1e-4) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * kInvPhi;
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * kInvPhi;
            fd = objective(d);
        }
        if (fc < best_val) { best_val = fc; best_eta = c; }
        if (fd < best_val) { best_val = fd; best_eta = d; }
    }
    r.eta_star = best_eta;
    r.outage_star = best_val;
    return r;
}

namespace {

struct Split {
    int n_s;
    int n_r;
    double outage;
};

constexpr int kMinPhase = 100;
constexpr int kMaxPhase = 3000;
constexpr int kMaxBudget = 6000;

// Best feasible split of budget N, scanning outward from the balanced split
// so typical feasible budgets exit early. Exhaustive when nothing is
// feasible. With stop_at_first, returns the first feasible split found.
std::optional<Split> best_feasible_split(const RelaySystem& sys, Scheme scheme, int budget,
                                         double target, bool equal_split, bool stop_at_first) {
    if (equal_split) {
        if (budget % 2 != 0) return std::nullopt;
        const int n = budget / 2;
        if (n < kMinPhase || n > kMaxPhase) return std::nullopt;
        const double eps = outage_scheme(with_blocklengths(sys, n, n), scheme);
        if (eps <= target) return Split{n, n, eps};
        return std::nullopt;
    }
    const int lo = std::max(kMinPhase, budget - kMaxPhase);
    const int hi = std::min(kMaxPhase, budget - kMinPhase);
    if (lo > hi) return std::nullopt;
    std::optional<Split> best;
    bool done = false;
    auto consider = [&](int n_s) {
        if (n_s < lo || n_s > hi || done) return;
        const double eps = outage_scheme(with_blocklengths(sys, n_s, budget - n_s), scheme);
        if (eps <= target && (!best || eps < best->outage)) {
            best = Split{n_s, budget - n_s, eps};
            if (stop_at_first) done = true;
        }
    };
    const int mid = std::clamp(budget / 2, lo, hi);
    consider(mid);
    for (int off = 1; !done && (mid - off >= lo || mid + off <= hi); ++off) {
        consider(mid - off);
        consider(mid + off);
    }
    return best;
}

}  // namespace

DelayPlan optimize_blocklengths(const RelaySystem& sys, Scheme scheme, double target_outage,
                                double symbol_time, bool equal_split) {
    if (!(target_outage > 0.0) || !(target_outage < 0.1))
        throw std::domain_error("optimize_blocklengths: requires target in (0, 0.1)");
    if (!(symbol_time > 0.0))
        throw std::domain_error("optimize_blocklengths: requires symbol_time > 0");

    auto feasible = [&](int budget) {
        return best_feasible_split(sys, scheme, budget, target_outage, equal_split,
                                   /*stop_at_first=*/true);
    };

    if (!feasible(kMaxBudget))
        throw InfeasibleError("optimize_blocklengths: target unreachable within budget 6000");

    int lo = 2 * kMinPhase - 2;  // below the domain: infeasible by definition
    int hi = kMaxBudget;
    if (auto f = feasible(2 * kMinPhase)) {
        hi = 2 * kMinPhase;
    } else {
        lo = 2 * kMinPhase;
        while (hi - lo > 2) {
            int mid = lo + (hi - lo) / 2;
            mid -= mid % 2;
            if (mid <= lo) mid = lo + 2;
            if (feasible(mid))
                hi = mid;
            else
                lo = mid;
        }
    }

    // Local-minimality certificate: the next-smaller budget admits no
    // feasible split at all (exhaustive scan). A hit here means the
    // feasibility predicate was not monotone, which indicates an outage bug.
    if (hi - 2 >= 2 * kMinPhase) {
        if (best_feasible_split(sys, scheme, hi - 2, target_outage, equal_split,
                                /*stop_at_first=*/true))
            throw std::logic_error(
                "optimize_blocklengths: feasible split below the bisection optimum; "
                "outage is not monotone in the budget");
    }

    const auto plan = best_feasible_split(sys, scheme, hi, target_outage, equal_split,
                                          /*stop_at_first=*/false);
    if (!plan)
        throw std::logic_error("optimize_blocklengths: bisection lost feasibility");

    DelayPlan d;
    d.n_s = plan->n_s;
    d.n_r = plan->n_r;
    d.delta = symbol_time * static_cast<double>(plan->n_s + plan->n_r);
    d.achieved_outage = plan->outage;
    d.target_outage = target_outage;
    d.symbol_time = symbol_time;
    return d;
}

std::vector<std::vector<double>> reliability_contour(const RelaySystem& sys_template,
                                                     Scheme scheme,
                                                     const std::vector<int>& n_grid,
                                                     const std::vector<double>& k_grid) {
    if (n_grid.empty() || k_grid.empty())
        throw std::domain_error("reliability_contour: grids must be nonempty");
    std::vector<std::vector<double>> rows;
    rows.reserve(n_grid.size());
    for (const int n : n_grid) {
        if (n < 100)
            throw std::domain_error("reliability_contour: requires n >= 100");
        std::vector<double> row;
        row.reserve(k_grid.size());
        for (const double k : k_grid) {
            RelayParams p = sys_template.params();
            p.n_s = n;
            p.n_r = n;
            p.k = k;
            row.push_back(1.0 - outage_scheme(RelaySystem(p), scheme));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace fbrelay
