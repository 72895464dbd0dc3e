// SPDX-License-Identifier: Apache-2.0
#include "fbrelay/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fbrelay {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

Scheme scheme_from_string(const std::string& s) {
    if (s == "DT") return Scheme::DT;
    if (s == "SC") return Scheme::SC;
    if (s == "MRC") return Scheme::MRC;
    throw ConfigError("unknown scheme '" + s + "' (expected DT, SC or MRC)");
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::DT: return "DT";
        case Scheme::SC: return "SC";
        case Scheme::MRC: return "MRC";
    }
    return "?";
}

std::string to_string(LinearizationMode m) {
    return m == LinearizationMode::consistent ? "consistent" : "paper-literal";
}

std::string to_string(SrdBlocklength b) {
    return b == SrdBlocklength::source_phase ? "source" : "combined";
}

RelaySystem RunConfig::make_system() const {
    RelayParams p;
    p.total_power = power;
    p.eta = eta;
    p.noise = noise;
    p.m_sd = m_sd;
    p.m_sr = m_sr;
    p.m_rd = m_rd;
    p.n_s = n_s;
    p.n_r = n_r;
    p.k = k;
    p.beta = beta;
    p.mode = mode;
    p.srd_blocklength = srd_blocklength;
    return RelaySystem(p);
}

RelaySystem RunConfig::make_system(double m_override) const {
    RelayParams p = make_system().params();
    p.m_sd = p.m_sr = p.m_rd = m_override;
    return RelaySystem(p);
}

namespace {

LinearizationMode mode_from_string(const std::string& s) {
    if (s == "consistent") return LinearizationMode::consistent;
    if (s == "paper-literal" || s == "paper_literal") return LinearizationMode::paper_literal;
    throw ConfigError("unknown mode '" + s + "' (expected consistent or paper-literal)");
}

SrdBlocklength srd_from_string(const std::string& s) {
    if (s == "source") return SrdBlocklength::source_phase;
    if (s == "combined") return SrdBlocklength::combined;
    throw ConfigError("unknown srd_blocklength '" + s + "' (expected source or combined)");
}

OutputFormat format_from_string(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("unknown format '" + s + "' (expected csv or json)");
}

template <typename T>
T require(const json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config field '" + key + "' has the wrong type");
    }
}

}  // namespace

RunConfig parse_config_json(const std::string& json_text, const RunConfig& base) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");

    RunConfig c = base;
    bool power_set = false;
    for (const auto& [key, value] : doc.items()) {
        if (key == "schemes") {
            c.schemes.clear();
            for (const auto& s : require<std::vector<std::string>>(value, key))
                c.schemes.push_back(scheme_from_string(s));
            if (c.schemes.empty())
                throw ConfigError("config field 'schemes' must not be empty");
        } else if (key == "m_sd") {
            c.m_sd = require<double>(value, key);
        } else if (key == "m_sr") {
            c.m_sr = require<double>(value, key);
        } else if (key == "m_rd") {
            c.m_rd = require<double>(value, key);
        } else if (key == "m") {
            c.m_sd = c.m_sr = c.m_rd = require<double>(value, key);
            c.m_values = {c.m_sd};
        } else if (key == "m_values") {
            c.m_values = require<std::vector<double>>(value, key);
            if (c.m_values.empty())
                throw ConfigError("config field 'm_values' must not be empty");
        } else if (key == "power_db") {
            if (power_set)
                throw ConfigError("set only one of 'power_db' and 'power_linear'");
            c.power = db_to_linear(require<double>(value, key));
            power_set = true;
        } else if (key == "power_linear") {
            if (power_set)
                throw ConfigError("set only one of 'power_db' and 'power_linear'");
            c.power = require<double>(value, key);
            power_set = true;
        } else if (key == "eta") {
            c.eta = require<double>(value, key);
        } else if (key == "noise") {
            c.noise = require<double>(value, key);
        } else if (key == "beta") {
            c.beta = require<double>(value, key);
        } else if (key == "n_s") {
            c.n_s = require<int>(value, key);
        } else if (key == "n_r") {
            c.n_r = require<int>(value, key);
        } else if (key == "k") {
            c.k = require<double>(value, key);
        } else if (key == "mode") {
            c.mode = mode_from_string(require<std::string>(value, key));
        } else if (key == "srd_blocklength") {
            c.srd_blocklength = srd_from_string(require<std::string>(value, key));
        } else if (key == "mc_samples") {
            c.mc_samples = require<std::uint64_t>(value, key);
        } else if (key == "seed") {
            c.seed = require<std::uint64_t>(value, key);
        } else if (key == "out") {
            c.out_path = require<std::string>(value, key);
        } else if (key == "format") {
            c.format = format_from_string(require<std::string>(value, key));
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    try {
        (void)c.make_system();  // surface invalid combinations now
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid configuration: ") + e.what());
    }
    return c;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_json(ss.str(), base);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns.size())
        throw std::logic_error("Table: row width does not match column count");
    rows.push_back(std::move(cells));
}

std::string format_numeric(double v) {
    if (!std::isfinite(v))
        throw std::logic_error("refusing to serialize a non-finite numeric");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

namespace {

void write_cell_csv(const Table::Cell& cell, std::ostream& os) {
    if (std::holds_alternative<std::int64_t>(cell))
        os << std::get<std::int64_t>(cell);
    else if (std::holds_alternative<double>(cell))
        os << format_numeric(std::get<double>(cell));
    else
        os << std::get<std::string>(cell);
}

}  // namespace

void write_csv(const Report& report, std::ostream& os) {
    bool first = true;
    for (const Table& t : report) {
        if (!first) os << "\n";
        first = false;
        os << "#[" << t.name << "]\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i];
        os << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) os << ",";
                write_cell_csv(row[i], os);
            }
            os << "\n";
        }
    }
}

void write_json(const Report& report, std::ostream& os) {
    json doc = json::object();
    for (const Table& t : report) {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                const auto& cell = row[i];
                if (std::holds_alternative<std::int64_t>(cell)) {
                    obj[t.columns[i]] = std::get<std::int64_t>(cell);
                } else if (std::holds_alternative<double>(cell)) {
                    const double v = std::get<double>(cell);
                    if (!std::isfinite(v))
                        throw std::logic_error("refusing to serialize a non-finite numeric");
                    obj[t.columns[i]] = v;
                } else {
                    obj[t.columns[i]] = std::get<std::string>(cell);
                }
            }
            rows.push_back(std::move(obj));
        }
        doc[t.name] = std::move(rows);
    }
    os << doc.dump(2) << "\n";
}

void write_report(const Report& report, std::ostream& os, OutputFormat format) {
    if (format == OutputFormat::csv)
        write_csv(report, os);
    else
        write_json(report, os);
}

}  // namespace fbrelay
