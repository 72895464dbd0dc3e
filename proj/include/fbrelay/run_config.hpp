// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "fbrelay/outage.hpp"

namespace fbrelay {

/// User-facing configuration errors (bad JSON, unknown keys, bad values).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

/// Flat experiment manifest. JSON file values override the defaults below;
/// CLI flags override file values. Unknown JSON keys are rejected.
struct RunConfig {
    std::vector<Scheme> schemes = {Scheme::DT, Scheme::SC, Scheme::MRC};
    double m_sd = 2.0;
    double m_sr = 2.0;
    double m_rd = 2.0;
    std::vector<double> m_values = {1.0, 2.0, 3.0};  // per-curve symmetric m for sweeps
    double power = 10.0;       // linear P/N0; "power_db" in JSON converts via 10^(x/10)
    double eta = 0.5;
    double noise = 1.0;
    double beta = 0.5;
    int n_s = 500;
    int n_r = 500;
    double k = 250.0;
    LinearizationMode mode = LinearizationMode::consistent;
    SrdBlocklength srd_blocklength = SrdBlocklength::source_phase;
    std::uint64_t mc_samples = 0;
    std::uint64_t seed = 12345;
    std::string out_path;      // empty: stdout
    OutputFormat format = OutputFormat::csv;

    /// RelaySystem for this config, optionally overriding all three fading
    /// figures with one symmetric m.
    RelaySystem make_system() const;
    RelaySystem make_system(double m_override) const;
};

/// Parse a JSON document (flat object) over the given base config.
RunConfig parse_config_json(const std::string& json_text, const RunConfig& base = {});

/// Load from a file, with filename/position diagnostics on parse errors.
RunConfig load_config_file(const std::string& path, const RunConfig& base = {});

double db_to_linear(double db);
double linear_to_db(double lin);

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);
std::string to_string(LinearizationMode m);
std::string to_string(SrdBlocklength b);

/// Rectangular result table; every command's payload.
struct Table {
    using Cell = std::variant<std::int64_t, double, std::string>;
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

/// Named group of tables (some commands emit a sweep plus a summary).
using Report = std::vector<Table>;

/// CSV: '.' decimal separator, scientific with 12 significant digits,
/// one "#[name]" line per table, blank line between tables.
void write_csv(const Report& report, std::ostream& os);

/// JSON: object mapping table name -> array of row objects.
void write_json(const Report& report, std::ostream& os);

void write_report(const Report& report, std::ostream& os, OutputFormat format);

/// Formats with 12 significant digits ("%.11e"); throws on NaN/Inf (no
/// non-finite value may escape serialization).
std::string format_numeric(double v);

}  // namespace fbrelay
