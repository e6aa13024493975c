#include "bandsim/io.hpp"

#include "bandsim/errors.hpp"

#include <cstdio>
#include <fstream>

namespace bandsim {

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_escape(fields[i]);
    }
    return line;
}

namespace {

double get_number(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string(key) + ": expected a number");
    return v.get<double>();
}

} // namespace

CommonConfig parse_config_json(const nlohmann::json& j, const CommonConfig& base) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    static const char* kParamKeys[] = {"r",     "mu",    "sigma", "delta",
                                       "gamma", "alpha", "beta"};
    static const char* kOptionalKeys[] = {"seed", "dt", "reps", "format", "out"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : kParamKeys) known = known || it.key() == k;
        for (const char* k : kOptionalKeys) known = known || it.key() == k;
        if (!known) throw ConfigError(it.key());
    }
    for (const char* k : kParamKeys)
        if (!j.contains(k)) throw ConfigError(k);

    CommonConfig cfg = base;
    cfg.params.r = get_number(j, "r");
    cfg.params.mu = get_number(j, "mu");
    cfg.params.sigma = get_number(j, "sigma");
    cfg.params.delta = get_number(j, "delta");
    cfg.params.gamma = get_number(j, "gamma");
    cfg.params.alpha = get_number(j, "alpha");
    cfg.params.beta = get_number(j, "beta");
    if (j.contains("seed")) {
        const auto& v = j.at("seed");
        if (!v.is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
        cfg.seed = v.get<std::uint64_t>();
    }
    if (j.contains("dt")) cfg.dt = get_number(j, "dt");
    if (j.contains("reps")) {
        const auto& v = j.at("reps");
        if (!v.is_number_integer()) throw ConfigError("reps: expected an integer");
        cfg.reps = v.get<int>();
    }
    if (j.contains("format")) {
        const auto& v = j.at("format");
        if (!v.is_string()) throw ConfigError("format: expected a string");
        cfg.format = v.get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("format: expected csv or json");
    }
    if (j.contains("out")) {
        const auto& v = j.at("out");
        if (!v.is_string()) throw ConfigError("out: expected a string");
        cfg.out = v.get<std::string>();
    }
    return cfg;
}

CommonConfig parse_config_file(const std::string& path, const CommonConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    return parse_config_json(j, base);
}

nlohmann::json config_to_json(const CommonConfig& cfg) {
    nlohmann::json j;
    j["r"] = cfg.params.r;
    j["mu"] = cfg.params.mu;
    j["sigma"] = cfg.params.sigma;
    j["delta"] = cfg.params.delta;
    j["gamma"] = cfg.params.gamma;
    j["alpha"] = cfg.params.alpha;
    j["beta"] = cfg.params.beta;
    j["seed"] = cfg.seed;
    j["dt"] = cfg.dt;
    j["reps"] = cfg.reps;
    j["format"] = cfg.format;
    j["out"] = cfg.out;
    return j;
}

} // namespace bandsim
