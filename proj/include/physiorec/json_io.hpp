#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "physiorec/error.hpp"
#include "physiorec/learning.hpp"
#include "physiorec/recommender.hpp"
#include "physiorec/simulator.hpp"
#include "physiorec/types.hpp"

namespace physiorec {

namespace detail {

inline nlohmann::json expected_rows() {
    nlohmann::json rows = nlohmann::json::array();
    for (Condition c : kConditionOrder) rows.push_back(std::string(condition_code(c)));
    return rows;
}

inline nlohmann::json expected_cols() {
    nlohmann::json cols = nlohmann::json::array();
    for (ActivityCategory c : kCategoryOrder) cols.push_back(std::string(category_code(c)));
    return cols;
}

}  // namespace detail

// Weight matrix file: {"rows": ["a",...,"s"], "cols": ["or",...,"nl"],
// "data": six arrays of five numbers}. The labels are part of the format and
// must match exactly.
inline nlohmann::ordered_json weight_matrix_to_json(const WeightMatrix& w) {
    nlohmann::ordered_json out;
    out["rows"] = detail::expected_rows();
    out["cols"] = detail::expected_cols();
    auto data = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < kNumCategories; ++j) row.push_back(w.w[i][j]);
        data.push_back(row);
    }
    out["data"] = data;
    return out;
}

inline WeightMatrix weight_matrix_from_json(const nlohmann::json& j,
                                            double w_max = kDefaultWeightCap) {
    if (!j.is_object()) throw ValidationError("weights: expected a JSON object");
    if (!j.contains("rows") || j["rows"] != detail::expected_rows()) {
        throw ValidationError("weights: field 'rows' must be [\"a\",\"r\",\"t\",\"d\",\"h\",\"s\"]");
    }
    if (!j.contains("cols") || j["cols"] != detail::expected_cols()) {
        throw ValidationError(
            "weights: field 'cols' must be [\"or\",\"ae\",\"fd\",\"rs\",\"nl\"]");
    }
    if (!j.contains("data") || !j["data"].is_array() || j["data"].size() != kNumConditions) {
        throw ValidationError("weights: field 'data' must be an array of 6 rows");
    }
    WeightMatrix w;
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        const auto& row = j["data"][i];
        if (!row.is_array() || row.size() != kNumCategories) {
            throw ValidationError("weights: field 'data[" + std::to_string(i) +
                                  "]' must be an array of 5 numbers");
        }
        for (std::size_t jj = 0; jj < kNumCategories; ++jj) {
            if (!row[jj].is_number()) {
                throw ValidationError("weights: field 'data[" + std::to_string(i) + "][" +
                                      std::to_string(jj) + "]' must be a number");
            }
            double v = row[jj].get<double>();
            if (!std::isfinite(v) || std::abs(v) > w_max) {
                throw ValidationError("weights: field 'data[" + std::to_string(i) + "][" +
                                      std::to_string(jj) + "]' outside [-" +
                                      std::to_string(w_max) + ", " + std::to_string(w_max) + "]");
            }
            w.w[i][jj] = v;
        }
    }
    return w;
}

// Sign prior uses the weight-matrix shape with entries restricted to -1/0/+1.
inline nlohmann::ordered_json sign_prior_to_json(const SignPrior& p) {
    nlohmann::ordered_json out;
    out["rows"] = detail::expected_rows();
    out["cols"] = detail::expected_cols();
    auto data = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < kNumCategories; ++j) row.push_back(p.s[i][j]);
        data.push_back(row);
    }
    out["data"] = data;
    return out;
}

inline SignPrior sign_prior_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("sign prior: expected a JSON object");
    if (!j.contains("rows") || j["rows"] != detail::expected_rows() || !j.contains("cols") ||
        j["cols"] != detail::expected_cols()) {
        throw ValidationError("sign prior: fields 'rows'/'cols' must match the weight layout");
    }
    if (!j.contains("data") || !j["data"].is_array() || j["data"].size() != kNumConditions) {
        throw ValidationError("sign prior: field 'data' must be an array of 6 rows");
    }
    SignPrior p;
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        const auto& row = j["data"][i];
        if (!row.is_array() || row.size() != kNumCategories) {
            throw ValidationError("sign prior: field 'data[" + std::to_string(i) +
                                  "]' must be an array of 5 entries");
        }
        for (std::size_t jj = 0; jj < kNumCategories; ++jj) {
            if (!row[jj].is_number_integer()) {
                throw ValidationError("sign prior: field 'data[" + std::to_string(i) + "][" +
                                      std::to_string(jj) + "]' must be -1, 0 or +1");
            }
            int v = row[jj].get<int>();
            if (v < -1 || v > 1) {
                throw ValidationError("sign prior: field 'data[" + std::to_string(i) + "][" +
                                      std::to_string(jj) + "]' must be -1, 0 or +1");
            }
            p.s[i][jj] = v;
        }
    }
    return p;
}

// Catalog file: JSON array of {"id", "name", "category", "base_quality"}.
inline std::vector<Venue> catalog_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw ValidationError("catalog: expected a JSON array");
    std::vector<Venue> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& e = j[i];
        const std::string at = "catalog[" + std::to_string(i) + "]";
        if (!e.is_object()) throw ValidationError(at + ": expected an object");
        if (!e.contains("id") || !e["id"].is_string() || e["id"].get<std::string>().empty()) {
            throw ValidationError(at + ".id: must be a non-empty string");
        }
        if (!e.contains("name") || !e["name"].is_string()) {
            throw ValidationError(at + ".name: must be a string");
        }
        if (!e.contains("category") || !e["category"].is_string()) {
            throw ValidationError(at + ".category: must be a category name string");
        }
        auto cat = parse_category(e["category"].get<std::string>());
        if (!cat) {
            throw ValidationError(at + ".category: unknown category '" +
                                  e["category"].get<std::string>() + "'");
        }
        if (!e.contains("base_quality") || !e["base_quality"].is_number()) {
            throw ValidationError(at + ".base_quality: must be a number");
        }
        double q = e["base_quality"].get<double>();
        if (!(q >= 0.0 && q <= 1.0)) {
            throw ValidationError(at + ".base_quality: must be in [0, 1]");
        }
        Venue v{e["id"].get<std::string>(), e["name"].get<std::string>(), *cat, q};
        for (const Venue& prev : out) {
            if (prev.id == v.id) throw ValidationError(at + ".id: duplicate id '" + v.id + "'");
        }
        out.push_back(std::move(v));
    }
    return out;
}

inline nlohmann::ordered_json catalog_to_json(const std::vector<Venue>& catalog) {
    auto out = nlohmann::ordered_json::array();
    for (const Venue& v : catalog) {
        nlohmann::ordered_json e;
        e["id"] = v.id;
        e["name"] = v.name;
        e["category"] = category_name(v.category);
        e["base_quality"] = v.base_quality;
        out.push_back(e);
    }
    return out;
}

// Preferences file: JSON object mapping venue id to affinity in [0, 1].
inline UserPreferences preferences_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("preferences: expected a JSON object");
    UserPreferences prefs;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!it.value().is_number()) {
            throw ValidationError("preferences." + it.key() + ": must be a number");
        }
        double a = it.value().get<double>();
        if (!(a >= 0.0 && a <= 1.0)) {
            throw ValidationError("preferences." + it.key() + ": must be in [0, 1]");
        }
        prefs.affinity[it.key()] = a;
    }
    return prefs;
}

// Trace line: {"t": int, "pc": [6 numbers], "chosen": category, "samples": [...]}.
inline nlohmann::ordered_json sim_step_to_json(const SimStep& step) {
    nlohmann::ordered_json o;
    o["t"] = step.t;
    auto pc = nlohmann::ordered_json::array();
    for (double v : step.pc.v) pc.push_back(v);
    o["pc"] = pc;
    o["chosen"] = category_name(step.chosen);
    auto samples = nlohmann::ordered_json::array();
    for (const SensorSample& s : step.samples) samples.push_back(sample_to_json(s));
    o["samples"] = samples;
    return o;
}

inline std::string trace_to_jsonl(const SimTrace& trace) {
    std::string out;
    for (const SimStep& step : trace.steps) {
        out += sim_step_to_json(step).dump();
        out += '\n';
    }
    return out;
}

inline SimTrace trace_from_jsonl(std::string_view text) {
    SimTrace trace;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                               : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object()) throw ParseError(line_no, "trace record must be a JSON object");
        if (!j.contains("t") || !j["t"].is_number_integer()) {
            throw ParseError(line_no, "field 't' must be an integer timestamp");
        }
        if (!j.contains("pc") || !j["pc"].is_array() || j["pc"].size() != kNumConditions) {
            throw ParseError(line_no, "field 'pc' must be an array of 6 numbers");
        }
        if (!j.contains("chosen") || !j["chosen"].is_string()) {
            throw ParseError(line_no, "field 'chosen' must be a category name string");
        }

        SimStep step;
        step.t = j["t"].get<std::int64_t>();
        for (std::size_t i = 0; i < kNumConditions; ++i) {
            if (!j["pc"][i].is_number()) {
                throw ParseError(line_no, "field 'pc' must be an array of 6 numbers");
            }
            double v = j["pc"][i].get<double>();
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ParseError(line_no, "field 'pc[" + std::to_string(i) +
                                              "]' must be in [0, 1]");
            }
            step.pc[i] = v;
        }
        auto cat = parse_category(j["chosen"].get<std::string>());
        if (!cat) {
            throw ParseError(line_no, "field 'chosen' has unknown category '" +
                                          j["chosen"].get<std::string>() + "'");
        }
        step.chosen = *cat;
        if (j.contains("samples")) {
            if (!j["samples"].is_array()) {
                throw ParseError(line_no, "field 'samples' must be an array");
            }
            for (const auto& sj : j["samples"]) {
                SensorSample s = sample_from_json(sj, line_no);
                validate_sample(s);
                step.samples.push_back(s);
            }
        }
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

inline std::vector<FeedbackEvent> feedback_events_from_trace(const SimTrace& trace) {
    std::vector<FeedbackEvent> events;
    events.reserve(trace.steps.size());
    for (const SimStep& step : trace.steps) {
        events.push_back({step.pc, step.chosen, step.t});
    }
    return events;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::string content{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("read failed: " + path.string());
    return content;
}

// Write-temp-then-rename so an interrupted run never leaves a half-written
// artifact at the destination.
inline void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open file for writing: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("rename failed for " + path.string() + ": " + ec.message());
    }
}

}  // namespace physiorec
