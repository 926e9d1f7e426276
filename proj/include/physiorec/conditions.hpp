#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "physiorec/error.hpp"
#include "physiorec/sensor_stream.hpp"
#include "physiorec/types.hpp"

namespace physiorec {

// Calibration anchors for mapping windowed sensor features onto [0,1]
// condition scores. Each score is min-max normalized against its anchors and
// clamped:
//
//   active   = hr_mix * (HR_mean - hr_low) / (hr_high - hr_low)
//            + (1 - hr_mix) * (accel_mean - accel_low) / (accel_high - accel_low)
//              (weights renormalized over the channels actually present)
//   relaxed  = 1 - active
//   tired    = 1 - sleep_sum / sleep_target_s
//   drunk    = alcohol_proxy mean (already normalized)
//   hungry   = (window_end - last feeding gesture) / gesture_gap_max_s
//   stressed = (SC_mean - sc_low) / (sc_high - sc_low)
//
// A condition whose driving channels are all absent falls back to the
// previous score when one is supplied, else 0. With a previous vector the
// fresh score is blended as prev + beta * (raw - prev).
struct InferenceParams {
    double hr_low = 60.0;
    double hr_high = 180.0;
    double accel_low = 0.5;
    double accel_high = 8.0;
    double hr_mix = 0.7;  // weight of heart rate within "active"; accel gets the rest

    double sleep_target_s = 28800.0;      // full night per 24 h
    double gesture_gap_max_s = 21600.0;   // gap at which hunger saturates
    double sc_low = 2.0;
    double sc_high = 20.0;

    double beta = 0.3;  // smoothing toward the fresh raw score
};

struct ParamViolation {
    std::string field;
    std::string message;
};

inline std::vector<ParamViolation> validate_params(const InferenceParams& p) {
    std::vector<ParamViolation> out;
    auto bad = [&](const char* field, const std::string& message) {
        out.push_back({field, message});
    };
    for (auto [name, value] : {std::pair<const char*, double>{"hr_low", p.hr_low},
                               {"hr_high", p.hr_high},
                               {"accel_low", p.accel_low},
                               {"accel_high", p.accel_high},
                               {"hr_mix", p.hr_mix},
                               {"sleep_target_s", p.sleep_target_s},
                               {"gesture_gap_max_s", p.gesture_gap_max_s},
                               {"sc_low", p.sc_low},
                               {"sc_high", p.sc_high},
                               {"beta", p.beta}}) {
        if (!std::isfinite(value)) bad(name, "must be finite");
    }
    if (!(p.hr_low < p.hr_high)) {
        bad("hr_low/hr_high", "active heart-rate anchors: lower must be below upper");
    }
    if (!(p.accel_low < p.accel_high)) {
        bad("accel_low/accel_high", "active accel anchors: lower must be below upper");
    }
    if (!(p.sc_low < p.sc_high)) {
        bad("sc_low/sc_high", "stressed conductance anchors: lower must be below upper");
    }
    if (!(p.hr_mix >= 0.0 && p.hr_mix <= 1.0)) bad("hr_mix", "mixing weight must be in [0, 1]");
    if (!(p.sleep_target_s > 0.0)) bad("sleep_target_s", "must be positive");
    if (!(p.gesture_gap_max_s > 0.0)) bad("gesture_gap_max_s", "must be positive");
    if (!(p.beta >= 0.0 && p.beta <= 1.0)) bad("beta", "smoothing factor must be in [0, 1]");
    return out;
}

namespace detail {

// Raw per-condition scores, already clamped; nullopt when the driving
// channels are absent from the window.
inline std::array<std::optional<double>, kNumConditions> raw_scores(const WindowedFeatures& f,
                                                                    const InferenceParams& p) {
    std::array<std::optional<double>, kNumConditions> raw;
    auto set = [&](Condition c, double v) { raw[static_cast<std::size_t>(c)] = v; };

    const auto& hr = f[SensorChannel::HeartRate];
    const auto& accel = f[SensorChannel::AccelMagnitude];
    double mix_sum = 0.0;
    double mix_acc = 0.0;
    if (hr && p.hr_mix > 0.0) {
        mix_acc += p.hr_mix * ((hr->mean - p.hr_low) / (p.hr_high - p.hr_low));
        mix_sum += p.hr_mix;
    }
    if (accel && p.hr_mix < 1.0) {
        mix_acc += (1.0 - p.hr_mix) * ((accel->mean - p.accel_low) / (p.accel_high - p.accel_low));
        mix_sum += 1.0 - p.hr_mix;
    }
    if (mix_sum > 0.0) {
        double active = clamp01(mix_acc / mix_sum);
        set(Condition::Active, active);
        set(Condition::Relaxed, 1.0 - active);
    }

    if (const auto& sleep = f[SensorChannel::SleepInterval]) {
        set(Condition::Tired, clamp01(1.0 - sleep->sum / p.sleep_target_s));
    }
    if (const auto& alcohol = f[SensorChannel::AlcoholProxy]) {
        set(Condition::Drunk, clamp01(alcohol->mean));
    }
    if (const auto& gesture = f[SensorChannel::FeedingGesture];
        gesture && gesture->last_positive_t) {
        // Hunger grows with the gap since the newest gesture event; a gesture
        // at the window end means the wearer is eating right now.
        double gap = static_cast<double>(f.window_end - *gesture->last_positive_t);
        set(Condition::Hungry, clamp01(gap / p.gesture_gap_max_s));
    }
    if (const auto& sc = f[SensorChannel::SkinConductance]) {
        set(Condition::Stressed, clamp01((sc->mean - p.sc_low) / (p.sc_high - p.sc_low)));
    }
    return raw;
}

}  // namespace detail

// Maps windowed features to the six-condition vector. Pure; the smoothing
// history is caller-owned. Throws ConfigError when params are invalid.
inline ConditionVector infer_conditions(const WindowedFeatures& features,
                                        const std::optional<ConditionVector>& history,
                                        const InferenceParams& params) {
    if (auto violations = validate_params(params); !violations.empty()) {
        std::string what = "invalid inference params:";
        for (const auto& v : violations) what += " " + v.field + " (" + v.message + ")";
        throw ConfigError(what);
    }

    const auto raw = detail::raw_scores(features, params);
    ConditionVector out;
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        if (raw[i]) {
            // prev + beta*(raw - prev): exact when raw == prev
            out[i] = history ? clamp01((*history)[i] + params.beta * (*raw[i] - (*history)[i]))
                             : *raw[i];
        } else {
            out[i] = history ? clamp01((*history)[i]) : 0.0;
        }
    }
    // Relaxed is the exact complement of active whenever the active pathway
    // produced a value; smoothing must not let the pair drift apart.
    if (raw[static_cast<std::size_t>(Condition::Active)]) {
        out[Condition::Relaxed] = 1.0 - out[Condition::Active];
    }
    return out;
}

}  // namespace physiorec
