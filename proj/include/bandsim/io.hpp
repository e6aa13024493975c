#pragma once

#include "bandsim/params.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bandsim {

/// Seed used when none is given on the command line or in a config file.
inline constexpr std::uint64_t kDefaultSeed = 19;

/// Locale-independent decimal formatting with 12 significant digits.
std::string fmt12(double v);

/// RFC-4180 escaping: fields containing comma, quote, or newline are quoted,
/// embedded quotes doubled.
std::string csv_escape(const std::string& field);

/// One CSV line (without terminator) from escaped fields.
std::string csv_row(const std::vector<std::string>& fields);

/// Settings shared by every subcommand; the config file covers exactly these.
struct CommonConfig {
    ModelParams params;
    std::uint64_t seed = kDefaultSeed;
    double dt = 1.0 / 24.0;
    int reps = 100;
    std::string format = "csv";  ///< csv | json
    std::string out;             ///< output directory, empty = stdout
};

/// Parses a JSON config file over `base`. The file must define every
/// ModelParams field (r, mu, sigma, delta, gamma, alpha, beta); the optional
/// keys seed, dt, reps, format, out override base. Any other key raises
/// ConfigError naming it.
CommonConfig parse_config_file(const std::string& path, const CommonConfig& base);

/// Same contract, starting from already-parsed JSON.
CommonConfig parse_config_json(const nlohmann::json& j, const CommonConfig& base);

/// Serializes a resolved config; parse_config_json inverts it exactly.
nlohmann::json config_to_json(const CommonConfig& cfg);

} // namespace bandsim
