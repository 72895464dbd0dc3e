// SPDX-License-Identifier: Apache-2.0
#include "fbrelay/cli.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

#include "fbrelay/optimize.hpp"
#include "fbrelay/quadrature.hpp"

namespace fbrelay {

namespace {

std::int64_t i64(int v) { return static_cast<std::int64_t>(v); }

std::vector<double> series_m(const RunConfig& c) {
    return c.m_values.empty() ? std::vector<double>{c.m_sd} : c.m_values;
}

}  // namespace

Report cmd_outage_vs_n(const RunConfig& config, int n_min, int n_max, int step) {
    if (n_min < 100)
        throw ConfigError("outage-vs-n: requires n_min >= 100");
    if (step < 1 || n_max < n_min)
        throw ConfigError("outage-vs-n: requires step >= 1 and n_max >= n_min");

    Table t;
    t.name = "outage_vs_n";
    t.columns = {"m", "n"};
    for (Scheme s : config.schemes)
        t.columns.push_back("eps_" + to_string(s));
    if (config.mc_samples > 0)
        for (Scheme s : config.schemes) {
            t.columns.push_back("eps_" + to_string(s) + "_mc");
            t.columns.push_back("ci3_" + to_string(s) + "_mc");
        }

    for (double m : series_m(config)) {
        for (int n = n_min; n <= n_max; n += step) {
            RelayParams p = config.make_system(m).params();
            p.n_s = n;
            p.n_r = n;
            const RelaySystem sys(p);
            std::vector<Table::Cell> row{m, i64(n)};
            for (Scheme s : config.schemes)
                row.emplace_back(outage_scheme(sys, s));
            if (config.mc_samples > 0)
                for (Scheme s : config.schemes) {
                    const OutageResult r = outage_scheme_mc(sys, s, config.mc_samples, config.seed);
                    row.emplace_back(r.value);
                    row.emplace_back(r.ci_halfwidth);
                }
            t.add_row(std::move(row));
        }
    }
    return {t};
}

Report cmd_outage_vs_power(const RunConfig& config, double p_min_db, double p_max_db,
                           double step_db) {
    if (!(p_min_db < p_max_db))
        throw ConfigError("outage-vs-power: requires p_min_db < p_max_db");
    if (!(step_db > 0.0))
        throw ConfigError("outage-vs-power: requires step_db > 0");

    Table t;
    t.name = "outage_vs_power";
    t.columns = {"m", "p_db"};
    for (Scheme s : config.schemes)
        t.columns.push_back("eps_" + to_string(s));
    if (config.mc_samples > 0)
        for (Scheme s : config.schemes) {
            t.columns.push_back("eps_" + to_string(s) + "_mc");
            t.columns.push_back("ci3_" + to_string(s) + "_mc");
        }

    for (double m : series_m(config)) {
        for (double p_db = p_min_db; p_db <= p_max_db + 1e-9; p_db += step_db) {
            RelayParams p = config.make_system(m).params();
            p.total_power = db_to_linear(p_db);
            const RelaySystem sys(p);
            std::vector<Table::Cell> row{m, p_db};
            for (Scheme s : config.schemes)
                row.emplace_back(outage_scheme(sys, s));
            if (config.mc_samples > 0)
                for (Scheme s : config.schemes) {
                    const OutageResult r = outage_scheme_mc(sys, s, config.mc_samples, config.seed);
                    row.emplace_back(r.value);
                    row.emplace_back(r.ci_halfwidth);
                }
            t.add_row(std::move(row));
        }
    }
    return {t};
}

Report cmd_contour(const RunConfig& config, const std::vector<int>& n_grid,
                   const std::vector<double>& k_grid) {
    if (n_grid.empty() || k_grid.empty())
        throw ConfigError("contour: grids must not be empty");

    Report rep;
    for (Scheme s : config.schemes) {
        const auto matrix = reliability_contour(config.make_system(), s, n_grid, k_grid);
        Table t;
        t.name = "success_" + to_string(s);
        t.columns = {"n"};
        for (double k : k_grid)
            t.columns.push_back("k=" + format_numeric(k));
        for (std::size_t i = 0; i < n_grid.size(); ++i) {
            std::vector<Table::Cell> row{i64(n_grid[i])};
            for (double v : matrix[i])
                row.emplace_back(v);
            t.add_row(std::move(row));
        }
        rep.push_back(std::move(t));
    }
    return rep;
}

Report cmd_eta_sweep(const RunConfig& config, double step, const std::vector<int>& n_list) {
    Table sweep;
    sweep.name = "eta_sweep";
    sweep.columns = {"scheme", "n", "eta", "outage"};
    Table summary;
    summary.name = "eta_optimum";
    summary.columns = {"scheme", "n", "eta_star", "outage_star"};

    const std::vector<int> ns = n_list.empty() ? std::vector<int>{config.n_s} : n_list;
    for (Scheme s : config.schemes) {
        if (s == Scheme::DT) continue;  // eta sweeps concern the relaying schemes
        for (int n : ns) {
            RelayParams p = config.make_system().params();
            p.n_s = n;
            p.n_r = n;
            const EtaSweepResult r = optimize_eta(RelaySystem(p), s, step);
            for (std::size_t i = 0; i < r.eta_grid.size(); ++i)
                sweep.add_row({to_string(s), i64(n), r.eta_grid[i], r.outages[i]});
            summary.add_row({to_string(s), i64(n), r.eta_star, r.outage_star});
        }
    }
    return {sweep, summary};
}

Report cmd_delay_opt(const RunConfig& config, const std::vector<double>& targets,
                     double symbol_time, bool equal_split) {
    for (double t : targets)
        if (!(t > 0.0) || !(t < 0.1))
            throw ConfigError("delay-opt: targets must lie in (0, 0.1)");
    if (!(symbol_time > 0.0))
        throw ConfigError("delay-opt: symbol_time must be positive");

    Table t;
    t.name = "delay_plans";
    t.columns = {"scheme", "target", "feasible", "n_s", "n_r", "delta_s", "achieved_outage"};
    const RelaySystem sys = config.make_system();
    for (Scheme s : config.schemes) {
        if (s == Scheme::DT) continue;  // the delay model covers the two-phase schemes
        for (double target : targets) {
            try {
                const DelayPlan plan = optimize_blocklengths(sys, s, target, symbol_time,
                                                             equal_split);
                t.add_row({to_string(s), target, i64(1), i64(plan.n_s), i64(plan.n_r),
                           plan.delta, plan.achieved_outage});
            } catch (const InfeasibleError&) {
                t.add_row({to_string(s), target, i64(0), i64(0), i64(0), 0.0, 0.0});
            }
        }
    }
    if (t.rows.empty())
        throw ConfigError("delay-opt: no SC or MRC scheme selected");
    return {t};
}

namespace {

using Clock = std::chrono::steady_clock;

struct CheckRecorder {
    Table& table;
    std::ostream* timing_log;

    void add(const std::string& name, bool pass, double measured, double bound,
             Clock::time_point t0) const {
        table.add_row({name, std::string(pass ? "pass" : "fail"), measured, bound});
        if (timing_log) {
            const double ms = std::chrono::duration_cast<
                                  std::chrono::duration<double, std::milli>>(Clock::now() - t0)
                                  .count();
            *timing_log << "# validate: " << name << " took " << ms << " ms\n";
        }
    }
};

LinearizationParams perturb_mu(LinearizationParams p, double factor) {
    p.mu *= factor;
    const double half = 1.2533141373155002512 / p.mu;  // sqrt(pi/2)/mu
    p.rho_lo = p.theta - half;
    p.rho_hi = p.theta + half;
    return p;
}

// Rayleigh specialization of the closed form by direct exponential
// substitution; the m = 1 reduction oracle.
double rayleigh_closed_form(double omega, const LinearizationParams& p) {
    const double a = std::max(0.0, p.rho_lo);
    const double b = p.rho_hi;
    const double at = a / omega;
    const double bt = b / omega;
    const double head = 0.5 * ((1.0 - std::exp(-bt)) + (1.0 - std::exp(-at)));
    const double dq_m = std::exp(-at) - std::exp(-bt);
    const double dq_m1 = (1.0 + bt) * std::exp(-bt) - (1.0 + at) * std::exp(-at);
    return head + p.mu / 2.5066282746310005024 * (p.theta * dq_m + omega * dq_m1);
}

}  // namespace

Report cmd_validate(const RunConfig& config, double mu_perturbation, std::ostream* timing_log) {
    Table t;
    t.name = "validate";
    t.columns = {"check", "status", "measured", "bound"};
    const CheckRecorder rec{t, timing_log};

    // closed form vs adaptive quadrature, both slope conventions
    {
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (double m : {1.0, 2.0, 3.5})
            for (double om : {1.0, 10.0})
                for (int n : {200, 500})
                    for (double r : {0.5, 1.0})
                        for (auto mode :
                             {LinearizationMode::consistent, LinearizationMode::paper_literal}) {
                            const FadingLink link(m, om);
                            const CodeSpec code(n, r * n);
                            worst = std::max(worst,
                                             std::fabs(outage_closed_form(link, code, mode) -
                                                       outage_quadrature(link, code, mode)));
                        }
        rec.add("closed_form_vs_quadrature", worst <= 1e-7, worst, 1e-7, t0);
    }

    // m = 1 reduction to the exponential-substitution form
    {
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (double om : {1.0, 10.0, 100.0})
            for (int n : {100, 500, 2000})
                for (double r : {0.25, 0.5, 1.0}) {
                    const auto p = linearization_params(CodeSpec(n, r * n), config.mode);
                    worst = std::max(worst, std::fabs(outage_closed_form(FadingLink(1.0, om), p) -
                                                      rayleigh_closed_form(om, p)));
                }
        rec.add("rayleigh_reduction", worst <= 1e-12, worst, 1e-12, t0);
    }

    // sum density: unit mass and agreement with the convolution oracle
    {
        const auto t0 = Clock::now();
        detail::RandomStream rng(config.seed);
        double worst_mass = 0.0, worst_pdf = 0.0;
        for (int draw = 0; draw < 5; ++draw) {
            const FadingLink z(0.5 + 3.0 * rng.uniform(), 0.5 + 10.0 * rng.uniform());
            const FadingLink y(0.5 + 3.0 * rng.uniform(), 0.5 + 10.0 * rng.uniform());
            const SnrSumDensity f(z, y);
            const double mass =
                integrate([&f](double w) { return f(w); }, 0.0, f.tail_cutoff(), Accuracy(1e-9, 1e-9), 4000)
                    .value;
            worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
            for (int j = 1; j <= 5; ++j) {
                const double w = f.mean() * 0.4 * j;
                worst_pdf = std::max(worst_pdf, std::fabs(f(w) - sum_snr_pdf_oracle(z, y, w)));
            }
        }
        rec.add("sum_pdf_unit_mass", worst_mass <= 1e-6, worst_mass, 1e-6, t0);
        const auto t1 = Clock::now();
        rec.add("sum_pdf_vs_convolution", worst_pdf <= 1e-6, worst_pdf, 1e-6, t1);
    }

    // closed form (optionally mu-perturbed: self-test hook) vs exact-Q MC
    {
        const auto t0 = Clock::now();
        const RelaySystem sys = config.make_system();
        const FadingLink link = sys.link_sd();
        const CodeSpec code = sys.source_code();
        const std::uint64_t samples = config.mc_samples > 0 ? config.mc_samples : 200000;
        const auto params = perturb_mu(
            linearization_params(code, LinearizationMode::consistent), mu_perturbation);
        const double closed = outage_closed_form(link, params);
        const OutageResult mc = outage_exact_mc(link, code, samples, config.seed);
        const double gap = std::fabs(closed - mc.value);
        const double bound = std::max(mc.ci_halfwidth, 2e-3);
        rec.add("closed_form_vs_exact_mc", gap <= bound, gap, bound, t0);
    }

    // scheme ordering on a small default sweep
    {
        const auto t0 = Clock::now();
        double worst = -1.0;
        bool ok = true;
        for (double m : {1.0, 2.0})
            for (double p_db : {5.0, 10.0, 15.0}) {
                RelayParams p = config.make_system(m).params();
                p.total_power = db_to_linear(p_db);
                const RelaySystem sys(p);
                const double dt = outage_dt(sys);
                const double sc = outage_sc(sys);
                const double mrc = outage_mrc(sys);
                ok = ok && mrc <= sc && sc <= dt;
                worst = std::max(worst, std::max(mrc - sc, sc - dt));
            }
        rec.add("scheme_dominance", ok, worst, 0.0, t0);
    }

    // SRD: elementary m=1 route vs quadrature
    {
        const auto t0 = Clock::now();
        RelayParams p = config.make_system(1.0).params();
        p.eta = 0.4;
        const RelaySystem sys(p);
        const double gap =
            std::fabs(outage_srd(sys, SrdMethod::closed_m1) - outage_srd(sys, SrdMethod::quadrature));
        rec.add("srd_closed_m1_vs_quadrature", gap <= 1e-8, gap, 1e-8, t0);
    }

    // dB round trip
    {
        const auto t0 = Clock::now();
        double worst = 0.0;
        for (double x : {-17.0, -3.0, 0.0, 4.5, 10.0, 23.0})
            worst = std::max(worst, std::fabs(linear_to_db(db_to_linear(x)) - x));
        rec.add("db_roundtrip", worst <= 1e-12, worst, 1e-12, t0);
    }

    return {t};
}

bool validation_passed(const Report& report) {
    for (const Table& t : report)
        for (const auto& row : t.rows)
            if (row.size() >= 2 && std::holds_alternative<std::string>(row[1]) &&
                std::get<std::string>(row[1]) != "pass")
                return false;
    return true;
}

}  // namespace fbrelay
