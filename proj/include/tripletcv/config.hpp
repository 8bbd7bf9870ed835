#pragma once

#include "tripletcv/experiment.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

// Experiment configuration file handling. The on-disk format is JSON with
// the following schema (angles in degrees, phases in radians):
//
// {
//   "input_a": {"squeezing_db": -4.6, "antisqueezing_db": 22.3, "theta_sq_deg": 4.0},
//   "input_b": {"squeezing_db": -4.5, "antisqueezing_db": 22.2, "theta_sq_deg": 4.0},
//   "beamsplitter": {"transmittance": 0.477, "relative_phase_rad": 1.5877963268},
//   "visibility": 0.98,
//   "combiner": {"gain": 1.0, "sign": "sum"},
//   "metadata": {"measurement_frequency_mhz": 17.5, ...}   // optional, echoed only
// }
namespace tripletcv::config {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

namespace detail {

inline double require_number(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError(field, "missing");
    if (!j.at(field).is_number()) throw ConfigError(field, "must be a number");
    return j.at(field).get<double>();
}

inline experiment::KerrInputSpec parse_input(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ConfigError(field, "missing");
    const json& in = j.at(field);
    experiment::KerrInputSpec spec;
    spec.squeezing_db = require_number(in, "squeezing_db");
    spec.antisqueezing_db = require_number(in, "antisqueezing_db");
    spec.theta_sq = experiment::deg_to_rad(require_number(in, "theta_sq_deg"));
    if (spec.squeezing_db > 0.0) throw ConfigError(field + ".squeezing_db", "must be <= 0");
    if (spec.antisqueezing_db < 0.0)
        throw ConfigError(field + ".antisqueezing_db", "must be >= 0");
    return spec;
}

}  // namespace detail

inline experiment::ExperimentConfig parse_config(const json& j) {
    experiment::ExperimentConfig cfg;
    cfg.input_a = detail::parse_input(j, "input_a");
    cfg.input_b = detail::parse_input(j, "input_b");
    if (!j.contains("beamsplitter")) throw ConfigError("beamsplitter", "missing");
    cfg.bs_transmittance = detail::require_number(j.at("beamsplitter"), "transmittance");
    if (cfg.bs_transmittance < 0.0 || cfg.bs_transmittance > 1.0)
        throw ConfigError("beamsplitter.transmittance", "must be in [0,1]");
    cfg.relative_phase = detail::require_number(j.at("beamsplitter"), "relative_phase_rad");
    cfg.visibility = detail::require_number(j, "visibility");
    if (cfg.visibility < 0.0 || cfg.visibility > 1.0)
        throw ConfigError("visibility", "must be in [0,1]");
    if (j.contains("combiner")) {
        cfg.combiner.gain = detail::require_number(j.at("combiner"), "gain");
        const std::string sign = j.at("combiner").value("sign", "sum");
        if (sign == "sum")
            cfg.combiner.sign = experiment::CombinerSign::sum;
        else if (sign == "difference")
            cfg.combiner.sign = experiment::CombinerSign::difference;
        else
            throw ConfigError("combiner.sign", "must be 'sum' or 'difference'");
    }
    if (j.contains("metadata")) {
        for (const auto& [key, value] : j.at("metadata").items()) {
            if (!value.is_number()) throw ConfigError("metadata." + key, "must be a number");
            cfg.metadata[key] = value.get<double>();
        }
    }
    return cfg;
}

inline json serialize_config(const experiment::ExperimentConfig& cfg) {
    auto input = [](const experiment::KerrInputSpec& in) {
        return json{{"squeezing_db", in.squeezing_db},
                    {"antisqueezing_db", in.antisqueezing_db},
                    {"theta_sq_deg", in.theta_sq * 180.0 / M_PI}};
    };
    json j;
    j["input_a"] = input(cfg.input_a);
    j["input_b"] = input(cfg.input_b);
    j["beamsplitter"] = {{"transmittance", cfg.bs_transmittance},
                         {"relative_phase_rad", cfg.relative_phase}};
    j["visibility"] = cfg.visibility;
    j["combiner"] = {{"gain", cfg.combiner.gain},
                     {"sign", cfg.combiner.sign == experiment::CombinerSign::sum
                                  ? "sum"
                                  : "difference"}};
    if (!cfg.metadata.empty()) {
        json meta;
        for (const auto& [key, value] : cfg.metadata) meta[key] = value;
        j["metadata"] = meta;
    }
    return j;
}

inline experiment::ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("(file)", "cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("(file)", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

/// FNV-1a 64-bit over the canonical serialization; stable across runs.
inline std::uint64_t config_digest(const experiment::ExperimentConfig& cfg) {
    const std::string text = serialize_config(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace tripletcv::config
