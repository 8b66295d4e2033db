#include "waveobs_cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "waveobs_cli/errors.hpp"

namespace waveobs::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys{"source", "omega",      "T",     "nx",   "cfl",  "gamma1",
                                  "gamma2", "iterations", "noise", "seed", "snapshot_stride"};

double number(const json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

long long integer(const json& doc, const char* key, long long fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    return v.get<long long>();
}

SourceProfile parse_source(const json& src) {
    if (!src.is_object()) throw ConfigError("'source' must be an object");
    for (const auto& [key, _] : src.items())
        if (key != "profile" && key != "k" && key != "coeffs") throw ConfigError("unknown key 'source." + key + "'");

    std::string profile = src.contains("coeffs") ? "coeffs" : "poly_paper";
    if (src.contains("profile")) {
        if (!src.at("profile").is_string()) throw ConfigError("'source.profile' must be a string");
        profile = src.at("profile").get<std::string>();
    }
    if (profile == "coeffs") {
        if (!src.contains("coeffs") || !src.at("coeffs").is_array() || src.at("coeffs").empty())
            throw ConfigError("profile 'coeffs' needs a non-empty 'coeffs' array");
        std::vector<double> c;
        for (const auto& v : src.at("coeffs")) {
            if (!v.is_number()) throw ConfigError("'source.coeffs' entries must be numbers");
            c.push_back(v.get<double>());
        }
        return SourceProfile::sine_series(std::move(c));
    }
    const long long k = integer(src, "k", 1);
    if (k < 1) throw ConfigError("'source.k' must be >= 1");
    try {
        return SourceProfile::named(profile, static_cast<int>(k));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (!kKeys.count(key)) throw ConfigError("unknown key '" + key + "'");

    ScenarioConfig cfg;
    cfg.has_source = doc.contains("source");
    if (cfg.has_source) cfg.source = parse_source(doc.at("source"));
    cfg.omega = number(doc, "omega", cfg.omega);
    cfg.T = number(doc, "T", cfg.T);
    cfg.nx = static_cast<int>(integer(doc, "nx", cfg.nx));
    cfg.cfl = number(doc, "cfl", cfg.cfl);
    cfg.gains.gamma1 = number(doc, "gamma1", cfg.gains.gamma1);
    cfg.gains.gamma2 = number(doc, "gamma2", cfg.gains.gamma2);
    cfg.iterations = static_cast<int>(integer(doc, "iterations", cfg.iterations));
    cfg.noise = number(doc, "noise", cfg.noise);
    const long long seed = integer(doc, "seed", static_cast<long long>(cfg.seed));
    if (seed < 0) throw ConfigError("'seed' must be >= 0");
    cfg.seed = static_cast<unsigned long long>(seed);
    cfg.snapshot_stride = static_cast<int>(integer(doc, "snapshot_stride", cfg.snapshot_stride));

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

json config_to_json(const ScenarioConfig& cfg) {
    json src;
    switch (cfg.source.kind) {
        case SourceProfile::Kind::Polynomial: src["profile"] = "poly_paper"; break;
        case SourceProfile::Kind::SineMode:
            src["profile"] = "sine_k";
            src["k"] = cfg.source.k;
            break;
        case SourceProfile::Kind::Coefficients:
            src["profile"] = "coeffs";
            src["coeffs"] = cfg.source.coeffs;
            break;
    }
    json doc;
    if (cfg.has_source) doc["source"] = src;
    doc["omega"] = cfg.omega;
    doc["T"] = cfg.T;
    doc["nx"] = cfg.nx;
    doc["cfl"] = cfg.cfl;
    doc["gamma1"] = cfg.gains.gamma1;
    doc["gamma2"] = cfg.gains.gamma2;
    doc["iterations"] = cfg.iterations;
    doc["noise"] = cfg.noise;
    doc["seed"] = cfg.seed;
    doc["snapshot_stride"] = cfg.snapshot_stride;
    return doc;
}

}  // namespace waveobs::cli
