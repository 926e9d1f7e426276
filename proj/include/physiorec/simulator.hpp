#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "physiorec/conditions.hpp"
#include "physiorec/error.hpp"
#include "physiorec/learning.hpp"
#include "physiorec/recommender.hpp"
#include "physiorec/rng.hpp"
#include "physiorec/sensor_stream.hpp"
#include "physiorec/types.hpp"

namespace physiorec {

// Synthetic-tourist population with a planted ground-truth weight matrix.
// Condition trajectories follow clipped mean-reverting Gaussian dynamics and
// choices are drawn from softmax(ARI / temperature), so the learner's target
// is recoverable by construction.
struct SimConfig {
    std::uint64_t seed = 42;
    int n_steps = 1000;
    int n_tourists = 5;
    double temperature = 0.5;

    std::array<double, kNumConditions> kappa = {0.2, 0.2, 0.2, 0.2, 0.2, 0.2};  // reversion rate
    std::array<double, kNumConditions> sigma = {0.15, 0.15, 0.15, 0.15, 0.15, 0.15};

    WeightMatrix w_true = init_weights(default_sign_prior(), 2.0);

    std::int64_t start_t = 1'000'000;
    std::int64_t step_spacing_s = 0;  // 0: derived from inference params, see sim_step_spacing
};

inline void validate_sim_config(const SimConfig& cfg) {
    if (cfg.n_steps < 1) throw ConfigError("sim n_steps must be >= 1");
    if (cfg.n_tourists < 1) throw ConfigError("sim n_tourists must be >= 1");
    if (!(cfg.temperature > 0.0)) throw ConfigError("sim temperature must be > 0");
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        // kappa 0 freezes the dynamics; still a legal degenerate setting
        if (!(cfg.kappa[i] >= 0.0 && cfg.kappa[i] <= 1.0)) {
            throw ConfigError("sim kappa must be in [0, 1]");
        }
        if (!(cfg.sigma[i] >= 0.0)) throw ConfigError("sim sigma must be >= 0");
    }
}

// Step spacing doubles as the re-inference window length. It must exceed the
// hunger gap ceiling so a gesture encoding any hunger level still lands
// inside the half-open window.
inline std::int64_t sim_step_spacing(const SimConfig& cfg, const InferenceParams& params) {
    if (cfg.step_spacing_s > 0) return cfg.step_spacing_s;
    return static_cast<std::int64_t>(std::llround(params.gesture_gap_max_s)) + 60;
}

namespace detail {

inline std::uint64_t trajectory_stream(int tourist_index) {
    return 2ULL * static_cast<std::uint64_t>(tourist_index);
}
inline std::uint64_t choice_stream(int tourist_index) {
    return 2ULL * static_cast<std::uint64_t>(tourist_index) + 1ULL;
}

}  // namespace detail

// Mean-reverting trajectory of length n_steps for one tourist, deterministic
// in (seed, tourist_index). Five conditions evolve independently as
//   x' = clamp01((1 - kappa) * x + kappa * 0.5 + sigma * N(0,1))
// while relaxed stays the exact complement of active, matching what the
// sensor model can express (relaxed has no channel of its own).
inline std::vector<ConditionVector> generate_trajectory(const SimConfig& cfg, int tourist_index) {
    validate_sim_config(cfg);
    if (tourist_index < 0 || tourist_index >= cfg.n_tourists) {
        throw ContractError("tourist_index out of range");
    }
    Rng rng(cfg.seed, detail::trajectory_stream(tourist_index));

    constexpr std::array<Condition, 5> free_conditions = {
        Condition::Active, Condition::Tired, Condition::Drunk, Condition::Hungry,
        Condition::Stressed,
    };

    std::vector<ConditionVector> traj;
    traj.reserve(static_cast<std::size_t>(cfg.n_steps));

    ConditionVector pc;
    for (Condition c : free_conditions) pc[c] = rng.next_unit();
    pc[Condition::Relaxed] = 1.0 - pc[Condition::Active];
    traj.push_back(pc);

    for (int step = 1; step < cfg.n_steps; ++step) {
        ConditionVector next = pc;
        for (Condition c : free_conditions) {
            const auto i = static_cast<std::size_t>(c);
            double drift = (1.0 - cfg.kappa[i]) * pc[c] + cfg.kappa[i] * 0.5;
            next[c] = clamp01(drift + cfg.sigma[i] * rng.next_normal());
        }
        next[Condition::Relaxed] = 1.0 - next[Condition::Active];
        traj.push_back(next);
        pc = next;
    }
    return traj;
}

// Draws a category from softmax(compute_ari(pc, w_true) / tau).
inline ActivityCategory sample_choice(const ConditionVector& pc, const WeightMatrix& w_true,
                                      double tau, Rng& rng) {
    if (!(tau > 0.0)) throw ContractError("choice temperature must be > 0");
    AriVector scaled = compute_ari(pc, w_true);
    for (double& x : scaled.a) x /= tau;
    const auto q = softmax(scaled);

    const double u = rng.next_unit();
    double cum = 0.0;
    for (std::size_t j = 0; j < kNumCategories; ++j) {
        cum += q[j];
        if (u < cum) return static_cast<ActivityCategory>(j);
    }
    return ActivityCategory::Nightlife;  // u landed on accumulated rounding slack
}

// Sensor readings for one step, placed so that re-inference over the window
// (t - spacing, t] recovers pc: each formula is inverted inside its anchors
// and the hunger gap is encoded as the gesture's age.
inline std::vector<SensorSample> emit_step_samples(const ConditionVector& pc, std::int64_t t,
                                                   const InferenceParams& p) {
    std::vector<SensorSample> out;
    out.reserve(6);
    const auto gap =
        static_cast<std::int64_t>(std::llround(pc[Condition::Hungry] * p.gesture_gap_max_s));
    out.push_back({t - gap, SensorChannel::FeedingGesture, 1.0});
    out.push_back({t, SensorChannel::HeartRate,
                   p.hr_low + pc[Condition::Active] * (p.hr_high - p.hr_low)});
    out.push_back({t, SensorChannel::AccelMagnitude,
                   p.accel_low + pc[Condition::Active] * (p.accel_high - p.accel_low)});
    out.push_back({t, SensorChannel::SkinConductance,
                   p.sc_low + pc[Condition::Stressed] * (p.sc_high - p.sc_low)});
    out.push_back({t, SensorChannel::SleepInterval,
                   (1.0 - pc[Condition::Tired]) * p.sleep_target_s});
    out.push_back({t, SensorChannel::AlcoholProxy, pc[Condition::Drunk]});
    return out;
}

// Full sensor log for a trajectory; step k sits at base_t + (k+1) * spacing,
// so consecutive windows of length `spacing` partition the stream and each
// contains exactly one step's readings. Pass base_t < 0 to use cfg.start_t.
inline std::vector<SensorSample> emit_sensor_log(const std::vector<ConditionVector>& trajectory,
                                                 const InferenceParams& params,
                                                 const SimConfig& cfg, std::int64_t base_t = -1) {
    if (auto violations = validate_params(params); !violations.empty()) {
        throw ConfigError("invalid inference params: " + violations.front().field);
    }
    const std::int64_t spacing = sim_step_spacing(cfg, params);
    if (static_cast<double>(spacing) <= params.gesture_gap_max_s) {
        throw ConfigError("sim step spacing must exceed gesture_gap_max_s");
    }
    const std::int64_t base = base_t < 0 ? cfg.start_t : base_t;

    std::vector<SensorSample> log;
    log.reserve(trajectory.size() * 6);
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const std::int64_t t = base + static_cast<std::int64_t>(k + 1) * spacing;
        auto step = emit_step_samples(trajectory[k], t, params);
        log.insert(log.end(), step.begin(), step.end());
    }
    return log;
}

// One simulated step: the truth, what the sensors said, and what the tourist
// picked.
struct SimStep {
    std::int64_t t = 0;
    ConditionVector pc;
    ActivityCategory chosen = ActivityCategory::OutdoorsRecreation;
    std::vector<SensorSample> samples;

    bool operator==(const SimStep&) const = default;
};

struct SimTrace {
    std::vector<SimStep> steps;

    bool operator==(const SimTrace&) const = default;
};

// Runs every tourist and concatenates their steps. Tourists occupy disjoint
// time ranges, so timestamps increase strictly across the whole trace.
inline SimTrace simulate_trace(const SimConfig& cfg, const InferenceParams& params) {
    validate_sim_config(cfg);
    if (auto violations = validate_params(params); !violations.empty()) {
        throw ConfigError("invalid inference params: " + violations.front().field);
    }
    const std::int64_t spacing = sim_step_spacing(cfg, params);
    if (static_cast<double>(spacing) <= params.gesture_gap_max_s) {
        throw ConfigError("sim step spacing must exceed gesture_gap_max_s");
    }

    SimTrace trace;
    trace.steps.reserve(static_cast<std::size_t>(cfg.n_steps) *
                        static_cast<std::size_t>(cfg.n_tourists));
    for (int tourist = 0; tourist < cfg.n_tourists; ++tourist) {
        const std::int64_t base =
            cfg.start_t + static_cast<std::int64_t>(tourist) *
                              static_cast<std::int64_t>(cfg.n_steps + 2) * spacing;
        const auto trajectory = generate_trajectory(cfg, tourist);
        Rng choice_rng(cfg.seed, detail::choice_stream(tourist));
        for (std::size_t k = 0; k < trajectory.size(); ++k) {
            SimStep step;
            step.t = base + static_cast<std::int64_t>(k + 1) * spacing;
            step.pc = trajectory[k];
            step.chosen = sample_choice(trajectory[k], cfg.w_true, cfg.temperature, choice_rng);
            step.samples = emit_step_samples(trajectory[k], step.t, params);
            trace.steps.push_back(std::move(step));
        }
    }
    return trace;
}

// Fraction of test vectors on which the learned and true matrices pick the
// same category.
inline double evaluate_policy(const WeightMatrix& learned, const WeightMatrix& truth,
                              const std::vector<ConditionVector>& test_pcs) {
    if (test_pcs.empty()) throw ContractError("evaluate_policy requires test vectors");
    std::size_t agree = 0;
    for (const ConditionVector& pc : test_pcs) {
        if (select_category(compute_ari(pc, learned)) ==
            select_category(compute_ari(pc, truth))) {
            ++agree;
        }
    }
    return static_cast<double>(agree) / static_cast<double>(test_pcs.size());
}

}  // namespace physiorec
