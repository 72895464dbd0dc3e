// SPDX-License-Identifier: Apache-2.0
#include "fbrelay/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fbrelay/optimize.hpp"

namespace fbrelay {

namespace {

std::vector<int> int_range(int lo, int hi, int step) {
    std::vector<int> v;
    for (int x = lo; x <= hi; x += step)
        v.push_back(x);
    return v;
}

std::vector<double> double_range(double lo, double hi, double step) {
    std::vector<double> v;
    for (double x = lo; x <= hi + 1e-9; x += step)
        v.push_back(x);
    return v;
}

void emit(const Report& report, const RunConfig& config, std::ostream& fallback) {
    if (config.out_path.empty()) {
        write_report(report, fallback, config.format);
        return;
    }
    std::ofstream f(config.out_path, std::ios::binary);
    if (!f)
        throw ConfigError("cannot open output file '" + config.out_path + "'");
    write_report(report, f, config.format);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Short-packet relaying outage, reliability and latency calculator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_path, format_s, mode_s, srd_s, schemes_s;
    double eta = 0, power_db = 0, power_linear = 0, k = 0, m_all = 0;
    std::vector<double> m_values;
    int n_s = 0, n_r = 0;
    std::uint64_t mc_samples = 0, seed = 0;
    app.add_option("--config", config_path, "JSON config file (flags override file values)");
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format_s, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--mode", mode_s, "linearization slope: consistent or paper-literal")
        ->check(CLI::IsMember({"consistent", "paper-literal"}));
    app.add_option("--srd-blocklength", srd_s, "combined-signal blocklength: source or combined")
        ->check(CLI::IsMember({"source", "combined"}));
    app.add_option("--schemes", schemes_s, "comma list from DT,SC,MRC");
    app.add_option("--mc-samples", mc_samples, "Monte Carlo samples (0: analytic only)");
    app.add_option("--seed", seed, "Monte Carlo seed");
    app.add_option("--eta", eta, "source power fraction in (0,1]");
    app.add_option("--power-db", power_db, "total power P/N0 in dB");
    app.add_option("--power-linear", power_linear, "total power P/N0, linear");
    app.add_option("--k", k, "information bits");
    app.add_option("--n-s", n_s, "source-phase blocklength");
    app.add_option("--n-r", n_r, "relay-phase blocklength");
    app.add_option("--m", m_all, "Nakagami m for all three links");
    app.add_option("--m-values", m_values, "per-curve symmetric m list for sweeps")
        ->delimiter(',');

    // outage-vs-n
    auto* sub_n = app.add_subcommand("outage-vs-n", "outage per scheme as blocklength grows");
    int n_min = 100, n_max = 2000, n_step = 50;
    sub_n->add_option("--n-min", n_min, "smallest blocklength (>= 100)");
    sub_n->add_option("--n-max", n_max, "largest blocklength");
    sub_n->add_option("--step", n_step, "blocklength step");

    // outage-vs-power
    auto* sub_p = app.add_subcommand("outage-vs-power", "outage per scheme as power grows");
    double p_min = 0.0, p_max = 20.0, p_step = 1.0;
    sub_p->add_option("--p-min-db", p_min, "lowest P/N0 in dB");
    sub_p->add_option("--p-max-db", p_max, "highest P/N0 in dB");
    sub_p->add_option("--step-db", p_step, "dB step");

    // contour
    auto* sub_c = app.add_subcommand("contour", "success probability over (n, k)");
    int cn_min = 100, cn_max = 1000, cn_step = 100;
    double ck_min = 10, ck_max = 300, ck_step = 10;
    sub_c->add_option("--n-min", cn_min, "smallest blocklength");
    sub_c->add_option("--n-max", cn_max, "largest blocklength");
    sub_c->add_option("--n-step", cn_step, "blocklength step");
    sub_c->add_option("--k-min", ck_min, "smallest payload");
    sub_c->add_option("--k-max", ck_max, "largest payload");
    sub_c->add_option("--k-step", ck_step, "payload step");

    // eta-sweep
    auto* sub_e = app.add_subcommand("eta-sweep", "outage vs power allocation, with optimum");
    double e_step = 0.01;
    std::vector<int> e_nlist;
    sub_e->add_option("--step", e_step, "eta grid step, (0, 0.1]");
    sub_e->add_option("--n-list", e_nlist, "blocklengths emitted as separate series")
        ->delimiter(',');

    // delay-opt
    auto* sub_d = app.add_subcommand("delay-opt", "minimum delay meeting outage targets");
    std::vector<double> d_targets{1e-3, 1e-4};
    double d_ts = 8.33e-6;
    bool d_equal = false;
    sub_d->add_option("--targets", d_targets, "outage targets in (0, 0.1)")->delimiter(',');
    sub_d->add_option("--symbol-time", d_ts, "symbol period T_s in seconds");
    sub_d->add_flag("--equal-split", d_equal, "force n_s = n_r");

    // validate
    auto* sub_v = app.add_subcommand("validate", "run the internal consistency suite");
    double v_mutate_mu = 1.0;
    sub_v->add_option("--mutate-mu", v_mutate_mu,
                      "self-test hook: scale the closed-form slope (1.0 = off)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        RunConfig config;
        if (!config_path.empty())
            config = load_config_file(config_path, config);
        if (app.count("--out")) config.out_path = out_path;
        if (app.count("--format"))
            config = parse_config_json("{\"format\":\"" + format_s + "\"}", config);
        if (app.count("--mode"))
            config = parse_config_json("{\"mode\":\"" + mode_s + "\"}", config);
        if (app.count("--srd-blocklength"))
            config = parse_config_json("{\"srd_blocklength\":\"" + srd_s + "\"}", config);
        if (app.count("--schemes")) {
            config.schemes.clear();
            std::stringstream ss(schemes_s);
            std::string item;
            while (std::getline(ss, item, ','))
                config.schemes.push_back(scheme_from_string(item));
            if (config.schemes.empty())
                throw ConfigError("--schemes: list must not be empty");
        }
        if (app.count("--mc-samples")) config.mc_samples = mc_samples;
        if (app.count("--seed")) config.seed = seed;
        if (app.count("--eta")) config.eta = eta;
        if (app.count("--power-db") && app.count("--power-linear"))
            throw ConfigError("set only one of --power-db and --power-linear");
        if (app.count("--power-db")) config.power = db_to_linear(power_db);
        if (app.count("--power-linear")) config.power = power_linear;
        if (app.count("--k")) config.k = k;
        if (app.count("--n-s")) config.n_s = n_s;
        if (app.count("--n-r")) config.n_r = n_r;
        if (app.count("--m")) {
            config.m_sd = config.m_sr = config.m_rd = m_all;
            config.m_values = {m_all};
        }
        if (app.count("--m-values")) config.m_values = m_values;
        try {
            (void)config.make_system();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("invalid configuration: ") + e.what());
        }

        if (sub_n->parsed()) {
            emit(cmd_outage_vs_n(config, n_min, n_max, n_step), config, out);
            return kExitOk;
        }
        if (sub_p->parsed()) {
            emit(cmd_outage_vs_power(config, p_min, p_max, p_step), config, out);
            return kExitOk;
        }
        if (sub_c->parsed()) {
            if (cn_step < 1 || !(ck_step > 0))
                throw ConfigError("contour: steps must be positive");
            emit(cmd_contour(config, int_range(cn_min, cn_max, cn_step),
                             double_range(ck_min, ck_max, ck_step)),
                 config, out);
            return kExitOk;
        }
        if (sub_e->parsed()) {
            emit(cmd_eta_sweep(config, e_step, e_nlist), config, out);
            return kExitOk;
        }
        if (sub_d->parsed()) {
            const Report rep = cmd_delay_opt(config, d_targets, d_ts, d_equal);
            emit(rep, config, out);
            bool any_feasible = false;
            for (const auto& row : rep.front().rows)
                any_feasible = any_feasible || std::get<std::int64_t>(row[2]) == 1;
            return any_feasible ? kExitOk : kExitInfeasible;
        }
        if (sub_v->parsed()) {
            const Report rep = cmd_validate(config, v_mutate_mu, &err);
            emit(rep, config, out);
            return validation_passed(rep) ? kExitOk : kExitValidation;
        }
        err << "error: no subcommand\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InfeasibleError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace fbrelay
