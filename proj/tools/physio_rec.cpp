// physio-rec: turns wearable sensor logs into a physiological-condition
// vector, scores the five tourist-activity categories against a learned
// weight matrix, and recommends concrete venues. The simulate/train/evaluate
// commands close the loop against a synthetic population with a planted
// ground-truth matrix.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "physiorec/physiorec.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json_file(const std::string& path, const char* what) {
    try {
        return json::parse(physiorec::read_text_file(path));
    } catch (const json::parse_error& e) {
        throw physiorec::ValidationError(std::string(what) + " file " + path + ": " + e.what());
    }
}

ordered_json pc_to_json(const physiorec::ConditionVector& pc) {
    ordered_json o;
    for (physiorec::Condition c : physiorec::kConditionOrder) {
        o[std::string(physiorec::condition_name(c))] = pc[c];
    }
    return o;
}

ordered_json ari_to_json(const physiorec::AriVector& ari) {
    ordered_json o;
    for (physiorec::ActivityCategory c : physiorec::kCategoryOrder) {
        o[std::string(physiorec::category_name(c))] = ari[c];
    }
    return o;
}

physiorec::ConditionVector infer_from_log(const std::string& log_path,
                                          const physiorec::AppConfig& cfg, std::int64_t now) {
    const auto samples = physiorec::parse_sensor_log(physiorec::read_text_file(log_path));
    const auto features = physiorec::window(samples, cfg.window, now);
    return physiorec::infer_conditions(features, std::nullopt, cfg.inference);
}

int cmd_infer(const std::string& log_path, const physiorec::AppConfig& cfg, std::int64_t now) {
    std::cout << pc_to_json(infer_from_log(log_path, cfg, now)).dump() << "\n";
    return 0;
}

int cmd_recommend(const std::string& log_path, const physiorec::AppConfig& cfg, std::int64_t now,
                  int k) {
    const auto pc = infer_from_log(log_path, cfg, now);

    if (!fs::exists(cfg.weights_path)) {
        std::cerr << "error: weights file not found: " << cfg.weights_path
                  << " (run `physio-rec train` or `physio-rec init-weights` first)\n";
        return 1;
    }
    const auto w = physiorec::weight_matrix_from_json(
        parse_json_file(cfg.weights_path, "weights"), cfg.learning.w_max);
    const auto catalog =
        physiorec::catalog_from_json(parse_json_file(cfg.catalog_path, "catalog"));
    physiorec::UserPreferences prefs;
    if (fs::exists(cfg.preferences_path)) {
        prefs = physiorec::preferences_from_json(
            parse_json_file(cfg.preferences_path, "preferences"));
    }

    const auto ari = physiorec::compute_ari(pc, w);
    const auto category = physiorec::select_category(ari);
    const auto items = physiorec::rank_items(category, catalog, prefs, k, cfg.item_blend);

    ordered_json out;
    out["pc"] = pc_to_json(pc);
    out["ari"] = ari_to_json(ari);
    out["category"] = physiorec::category_name(category);
    auto items_json = ordered_json::array();
    for (const auto& item : items) {
        ordered_json e;
        e["id"] = item.venue.id;
        e["name"] = item.venue.name;
        e["score"] = item.score;
        items_json.push_back(e);
    }
    out["items"] = items_json;
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_simulate(const physiorec::AppConfig& cfg, const std::string& out_path) {
    const auto trace = physiorec::simulate_trace(cfg.sim, cfg.inference);
    physiorec::atomic_write_file(out_path, physiorec::trace_to_jsonl(trace));
    std::cerr << "wrote " << trace.steps.size() << " steps to " << out_path << "\n";
    return 0;
}

int cmd_train(const std::string& trace_path, const physiorec::AppConfig& cfg,
              const std::string& out_path) {
    const auto trace = physiorec::trace_from_jsonl(physiorec::read_text_file(trace_path));
    const auto events = physiorec::feedback_events_from_trace(trace);
    const auto w = physiorec::fit(events, cfg.sign_prior, cfg.learning);
    physiorec::atomic_write_file(out_path, physiorec::weight_matrix_to_json(w).dump(2) + "\n");
    std::cerr << "trained on " << events.size() << " events, wrote " << out_path << "\n";
    return 0;
}

int cmd_evaluate(const std::string& trace_path, const std::string& weights_path,
                 const physiorec::AppConfig& cfg) {
    const auto trace = physiorec::trace_from_jsonl(physiorec::read_text_file(trace_path));
    const auto learned = physiorec::weight_matrix_from_json(
        parse_json_file(weights_path, "weights"), cfg.learning.w_max);
    std::vector<physiorec::ConditionVector> pcs;
    pcs.reserve(trace.steps.size());
    for (const auto& step : trace.steps) pcs.push_back(step.pc);

    ordered_json out;
    out["agreement"] = physiorec::evaluate_policy(learned, cfg.sim.w_true, pcs);
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_init_weights(const physiorec::AppConfig& cfg, const std::string& out_path,
                     double magnitude) {
    const auto w = physiorec::init_weights(cfg.sign_prior, magnitude);
    physiorec::atomic_write_file(out_path, physiorec::weight_matrix_to_json(w).dump(2) + "\n");
    std::cerr << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"physiological-condition based tourist activity recommender"};
    app.require_subcommand(1);

    std::string config_path;
    std::string log_path;
    std::string trace_path;
    std::string weights_path;
    std::string out_path;
    std::int64_t now = 0;
    int k = -1;
    double magnitude = 1.0;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path,
                        "config file (default: $" + std::string(physiorec::kConfigEnvVar) +
                            ", else built-in defaults)");
    };

    CLI::App* infer = app.add_subcommand("infer", "infer the condition vector from a sensor log");
    infer->add_option("--log", log_path, "sensor log (JSON Lines)")->required();
    infer->add_option("--now", now, "query time, epoch seconds")->required();
    add_config(infer);

    CLI::App* recommend =
        app.add_subcommand("recommend", "recommend an activity category and venues");
    recommend->add_option("--log", log_path, "sensor log (JSON Lines)")->required();
    recommend->add_option("--now", now, "query time, epoch seconds")->required();
    recommend->add_option("--k", k, "number of venues to return");
    add_config(recommend);

    CLI::App* simulate = app.add_subcommand("simulate", "write a synthetic tourist trace");
    simulate->add_option("--out", out_path, "output trace path (JSON Lines)")->required();
    add_config(simulate);

    CLI::App* train = app.add_subcommand("train", "fit the weight matrix from a trace");
    train->add_option("--trace", trace_path, "input trace (JSON Lines)")->required();
    train->add_option("--out", out_path, "output weights path (JSON)")->required();
    add_config(train);

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "argmax agreement of learned weights vs the planted truth");
    evaluate->add_option("--trace", trace_path, "trace with test condition vectors")->required();
    evaluate->add_option("--weights", weights_path, "learned weights (JSON)")->required();
    add_config(evaluate);

    CLI::App* init_weights =
        app.add_subcommand("init-weights", "write sign-prior initialized weights");
    init_weights->add_option("--out", out_path, "output weights path (JSON)")->required();
    init_weights->add_option("--magnitude", magnitude, "absolute value of nonzero entries");
    add_config(init_weights);

    CLI11_PARSE(app, argc, argv);

    try {
        const auto cfg = physiorec::load_app_config(
            config_path.empty() ? std::nullopt : std::make_optional(config_path));
        if (infer->parsed()) return cmd_infer(log_path, cfg, now);
        if (recommend->parsed()) return cmd_recommend(log_path, cfg, now, k > 0 ? k : cfg.top_k);
        if (simulate->parsed()) return cmd_simulate(cfg, out_path);
        if (train->parsed()) return cmd_train(trace_path, cfg, out_path);
        if (evaluate->parsed()) return cmd_evaluate(trace_path, weights_path, cfg);
        if (init_weights->parsed()) return cmd_init_weights(cfg, out_path, magnitude);
    } catch (const physiorec::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
