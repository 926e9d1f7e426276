#pragma once

#include <cstdlib>
#include <optional>
#include <string>

#include "json.hpp"

#include "physiorec/conditions.hpp"
#include "physiorec/error.hpp"
#include "physiorec/json_io.hpp"
#include "physiorec/learning.hpp"
#include "physiorec/recommender.hpp"
#include "physiorec/sensor_stream.hpp"
#include "physiorec/simulator.hpp"

namespace physiorec {

inline constexpr const char* kConfigEnvVar = "PHYSIO_REC_CONFIG";

// Single configuration root for the CLI. Every field has a default; a config
// file only needs the fields it overrides. See the README for the schema.
struct AppConfig {
    InferenceParams inference;
    WindowSpec window;
    TriggerParams trigger;
    LearningParams learning;
    SignPrior sign_prior = default_sign_prior();
    SimConfig sim;

    double item_blend = 0.5;  // base_quality vs affinity mix in item ranking
    int top_k = 3;

    std::string catalog_path = "catalog.json";
    std::string preferences_path = "preferences.json";
    std::string weights_path = "weights.json";
};

namespace detail {

inline const nlohmann::json* section(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return nullptr;
    if (!j[key].is_object()) {
        throw ConfigError(std::string("config field '") + key + "' must be an object");
    }
    return &j[key];
}

inline void read_double(const nlohmann::json& j, const char* key, double& out,
                        const std::string& scope) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) {
        throw ConfigError("config field '" + scope + "." + key + "' must be a number");
    }
    out = j[key].get<double>();
}

inline void read_int(const nlohmann::json& j, const char* key, int& out,
                     const std::string& scope) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) {
        throw ConfigError("config field '" + scope + "." + key + "' must be an integer");
    }
    out = j[key].get<int>();
}

inline void read_i64(const nlohmann::json& j, const char* key, std::int64_t& out,
                     const std::string& scope) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) {
        throw ConfigError("config field '" + scope + "." + key + "' must be an integer");
    }
    out = j[key].get<std::int64_t>();
}

inline void read_u64(const nlohmann::json& j, const char* key, std::uint64_t& out,
                     const std::string& scope) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) {
        throw ConfigError("config field '" + scope + "." + key + "' must be an integer");
    }
    out = j[key].get<std::uint64_t>();
}

inline void read_string(const nlohmann::json& j, const char* key, std::string& out,
                        const std::string& scope) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) {
        throw ConfigError("config field '" + scope + "." + key + "' must be a string");
    }
    out = j[key].get<std::string>();
}

// Scalar broadcasts to all six conditions; an array sets them individually.
inline void read_per_condition(const nlohmann::json& j, const char* key,
                               std::array<double, kNumConditions>& out,
                               const std::string& scope) {
    if (!j.contains(key)) return;
    const auto& v = j[key];
    if (v.is_number()) {
        out.fill(v.get<double>());
        return;
    }
    if (v.is_array() && v.size() == kNumConditions) {
        for (std::size_t i = 0; i < kNumConditions; ++i) {
            if (!v[i].is_number()) {
                throw ConfigError("config field '" + scope + "." + key +
                                  "' must hold numbers");
            }
            out[i] = v[i].get<double>();
        }
        return;
    }
    throw ConfigError("config field '" + scope + "." + key +
                      "' must be a number or an array of 6 numbers");
}

}  // namespace detail

inline AppConfig app_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    AppConfig cfg;

    if (const auto* s = detail::section(j, "inference")) {
        detail::read_double(*s, "hr_low", cfg.inference.hr_low, "inference");
        detail::read_double(*s, "hr_high", cfg.inference.hr_high, "inference");
        detail::read_double(*s, "accel_low", cfg.inference.accel_low, "inference");
        detail::read_double(*s, "accel_high", cfg.inference.accel_high, "inference");
        detail::read_double(*s, "hr_mix", cfg.inference.hr_mix, "inference");
        detail::read_double(*s, "sleep_target_s", cfg.inference.sleep_target_s, "inference");
        detail::read_double(*s, "gesture_gap_max_s", cfg.inference.gesture_gap_max_s,
                            "inference");
        detail::read_double(*s, "sc_low", cfg.inference.sc_low, "inference");
        detail::read_double(*s, "sc_high", cfg.inference.sc_high, "inference");
        detail::read_double(*s, "beta", cfg.inference.beta, "inference");
    }
    if (const auto* s = detail::section(j, "window")) {
        detail::read_i64(*s, "duration_s", cfg.window.duration_s, "window");
    }
    if (const auto* s = detail::section(j, "trigger")) {
        detail::read_double(*s, "delta_threshold", cfg.trigger.delta_threshold, "trigger");
        detail::read_i64(*s, "cooldown_s", cfg.trigger.cooldown_s, "trigger");
    }
    if (const auto* s = detail::section(j, "learning")) {
        detail::read_double(*s, "eta", cfg.learning.eta, "learning");
        detail::read_int(*s, "epochs", cfg.learning.epochs, "learning");
        detail::read_double(*s, "l2", cfg.learning.l2, "learning");
        detail::read_u64(*s, "seed", cfg.learning.seed, "learning");
        detail::read_double(*s, "w_max", cfg.learning.w_max, "learning");
        if (s->contains("sign_prior")) cfg.sign_prior = sign_prior_from_json((*s)["sign_prior"]);
    }
    if (const auto* s = detail::section(j, "sim")) {
        detail::read_u64(*s, "seed", cfg.sim.seed, "sim");
        detail::read_int(*s, "n_steps", cfg.sim.n_steps, "sim");
        detail::read_int(*s, "n_tourists", cfg.sim.n_tourists, "sim");
        detail::read_double(*s, "temperature", cfg.sim.temperature, "sim");
        detail::read_per_condition(*s, "kappa", cfg.sim.kappa, "sim");
        detail::read_per_condition(*s, "sigma", cfg.sim.sigma, "sim");
        detail::read_i64(*s, "start_t", cfg.sim.start_t, "sim");
        detail::read_i64(*s, "step_spacing_s", cfg.sim.step_spacing_s, "sim");
        if (s->contains("w_true")) {
            cfg.sim.w_true = weight_matrix_from_json((*s)["w_true"], cfg.learning.w_max);
        }
    }
    if (const auto* s = detail::section(j, "recommend")) {
        detail::read_double(*s, "blend", cfg.item_blend, "recommend");
        detail::read_int(*s, "k", cfg.top_k, "recommend");
    }
    if (const auto* s = detail::section(j, "paths")) {
        detail::read_string(*s, "catalog", cfg.catalog_path, "paths");
        detail::read_string(*s, "preferences", cfg.preferences_path, "paths");
        detail::read_string(*s, "weights", cfg.weights_path, "paths");
    }

    // cross-field validation; every nested block must pass its own validator
    if (auto violations = validate_params(cfg.inference); !violations.empty()) {
        std::string what = "config: invalid inference params:";
        for (const auto& v : violations) what += " " + v.field;
        throw ConfigError(what);
    }
    if (cfg.window.duration_s <= 0) throw ConfigError("config field 'window.duration_s' must be > 0");
    if (!(cfg.trigger.delta_threshold > 0.0)) {
        throw ConfigError("config field 'trigger.delta_threshold' must be > 0");
    }
    if (cfg.trigger.cooldown_s < 0) throw ConfigError("config field 'trigger.cooldown_s' must be >= 0");
    if (!(cfg.learning.eta > 0.0)) throw ConfigError("config field 'learning.eta' must be > 0");
    if (cfg.learning.epochs < 1) throw ConfigError("config field 'learning.epochs' must be >= 1");
    if (!(cfg.learning.l2 >= 0.0)) throw ConfigError("config field 'learning.l2' must be >= 0");
    if (!(cfg.learning.w_max > 0.0)) throw ConfigError("config field 'learning.w_max' must be > 0");
    validate_sim_config(cfg.sim);
    if (!(cfg.item_blend >= 0.0 && cfg.item_blend <= 1.0)) {
        throw ConfigError("config field 'recommend.blend' must be in [0, 1]");
    }
    if (cfg.top_k < 1) throw ConfigError("config field 'recommend.k' must be >= 1");
    if (cfg.catalog_path.empty() || cfg.preferences_path.empty() || cfg.weights_path.empty()) {
        throw ConfigError("config paths must be non-empty");
    }
    return cfg;
}

inline AppConfig load_app_config_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    return app_config_from_json(j);
}

// CLI flag wins over the PHYSIO_REC_CONFIG environment variable; with
// neither, the built-in defaults apply.
inline AppConfig load_app_config(const std::optional<std::string>& cli_path) {
    if (cli_path && !cli_path->empty()) return load_app_config_file(*cli_path);
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) {
        return load_app_config_file(env);
    }
    return AppConfig{};
}

}  // namespace physiorec
