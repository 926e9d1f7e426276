#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "physiorec/error.hpp"

namespace physiorec {

enum class SensorChannel : std::size_t {
    HeartRate = 0,     // beats/min
    AccelMagnitude,    // m/s^2, gravity removed
    SkinConductance,   // microsiemens
    FeedingGesture,    // event marker, 0 or 1
    SleepInterval,     // seconds of sleep ending at the sample timestamp
    AlcoholProxy,      // dimensionless, pre-normalized to [0,1]
};

inline constexpr std::size_t kNumChannels = 6;

inline constexpr std::array<SensorChannel, kNumChannels> kChannelOrder = {
    SensorChannel::HeartRate,      SensorChannel::AccelMagnitude,
    SensorChannel::SkinConductance, SensorChannel::FeedingGesture,
    SensorChannel::SleepInterval,  SensorChannel::AlcoholProxy,
};

constexpr std::string_view channel_name(SensorChannel c) {
    switch (c) {
        case SensorChannel::HeartRate:       return "heart_rate";
        case SensorChannel::AccelMagnitude:  return "accel_magnitude";
        case SensorChannel::SkinConductance: return "skin_conductance";
        case SensorChannel::FeedingGesture:  return "feeding_gesture";
        case SensorChannel::SleepInterval:   return "sleep_interval";
        case SensorChannel::AlcoholProxy:    return "alcohol_proxy";
    }
    return "?";
}

inline std::optional<SensorChannel> parse_channel(std::string_view name) {
    for (SensorChannel c : kChannelOrder) {
        if (name == channel_name(c)) return c;
    }
    return std::nullopt;
}

// One timestamped reading from a wearable sensor channel.
struct SensorSample {
    std::int64_t t = 0;  // seconds since epoch
    SensorChannel channel = SensorChannel::HeartRate;
    double value = 0.0;

    bool operator==(const SensorSample&) const = default;
};

// Per-channel validation bounds. The hardware gives no authoritative limits;
// these are engine constants, overridable nowhere on purpose (a reading
// outside them is a broken log, not a tunable).
inline constexpr double kHeartRateMin = 20.0;
inline constexpr double kHeartRateMax = 250.0;

// Throws ValidationError naming the channel and the violated bound.
inline void validate_sample(const SensorSample& s) {
    const std::string ch{channel_name(s.channel)};
    if (!std::isfinite(s.value)) {
        throw ValidationError(ch + " value must be finite");
    }
    switch (s.channel) {
        case SensorChannel::HeartRate:
            if (s.value < kHeartRateMin || s.value > kHeartRateMax) {
                throw ValidationError(ch + " value " + std::to_string(s.value) +
                                      " outside [20, 250]");
            }
            break;
        case SensorChannel::AccelMagnitude:
        case SensorChannel::SkinConductance:
        case SensorChannel::SleepInterval:
            if (s.value < 0.0) {
                throw ValidationError(ch + " value " + std::to_string(s.value) +
                                      " below minimum 0");
            }
            break;
        case SensorChannel::FeedingGesture:
            if (s.value != 0.0 && s.value != 1.0) {
                throw ValidationError(ch + " value " + std::to_string(s.value) +
                                      " not in {0, 1}");
            }
            break;
        case SensorChannel::AlcoholProxy:
            if (s.value < 0.0 || s.value > 1.0) {
                throw ValidationError(ch + " value " + std::to_string(s.value) +
                                      " outside [0, 1]");
            }
            break;
    }
}

// Parses one already-decoded JSON object {"t": int, "ch": name, "v": number}.
inline SensorSample sample_from_json(const nlohmann::json& j, int line) {
    if (!j.is_object()) throw ParseError(line, "sample record must be a JSON object");
    if (!j.contains("t") || !j["t"].is_number_integer()) {
        throw ParseError(line, "field 't' must be an integer timestamp");
    }
    if (!j.contains("ch") || !j["ch"].is_string()) {
        throw ParseError(line, "field 'ch' must be a channel name string");
    }
    if (!j.contains("v") || !j["v"].is_number()) {
        throw ParseError(line, "field 'v' must be a number");
    }
    const std::string ch = j["ch"].get<std::string>();
    const auto channel = parse_channel(ch);
    if (!channel) throw ParseError(line, "unknown channel '" + ch + "'");

    SensorSample s;
    s.t = j["t"].get<std::int64_t>();
    s.channel = *channel;
    s.value = j["v"].get<double>();
    return s;
}

inline nlohmann::ordered_json sample_to_json(const SensorSample& s) {
    nlohmann::ordered_json o;
    o["t"] = s.t;
    o["ch"] = channel_name(s.channel);
    o["v"] = s.value;
    return o;
}

// Parses a JSON Lines sensor log. Returns samples sorted by timestamp
// ascending, stable for equal timestamps. Blank lines are skipped.
// Throws ParseError (with line number) for malformed lines and
// ValidationError (naming channel and bound) for out-of-range values.
inline std::vector<SensorSample> parse_sensor_log(std::string_view text) {
    std::vector<SensorSample> samples;
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
        SensorSample s = sample_from_json(j, line_no);
        try {
            validate_sample(s);
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
        samples.push_back(s);
    }
    std::stable_sort(samples.begin(), samples.end(),
                     [](const SensorSample& a, const SensorSample& b) { return a.t < b.t; });
    return samples;
}

// Emits one JSON object per line with keys in the order t, ch, v.
inline std::string serialize_sensor_log(std::span<const SensorSample> samples) {
    std::string out;
    for (const SensorSample& s : samples) {
        out += sample_to_json(s).dump();
        out += '\n';
    }
    return out;
}

// Aggregation window. Covers (t_now - duration_s, t_now]: half-open at the
// old edge so consecutive windows partition the stream.
struct WindowSpec {
    std::int64_t duration_s = 86400;
};

struct ChannelAggregate {
    std::int64_t count = 0;
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double sum = 0.0;
    std::int64_t last_t = 0;                        // newest sample in window
    std::optional<std::int64_t> last_positive_t;    // newest sample with value > 0

    bool operator==(const ChannelAggregate&) const = default;
};

// Windowed per-channel features at a query time. A channel with no samples in
// the window is absent (nullopt), never silently zero.
struct WindowedFeatures {
    std::int64_t window_end = 0;
    std::array<std::optional<ChannelAggregate>, kNumChannels> channels{};

    const std::optional<ChannelAggregate>& operator[](SensorChannel c) const {
        return channels[static_cast<std::size_t>(c)];
    }
    std::optional<ChannelAggregate>& operator[](SensorChannel c) {
        return channels[static_cast<std::size_t>(c)];
    }

    bool operator==(const WindowedFeatures&) const = default;
};

// Aggregates samples with timestamp in (t_now - duration, t_now].
// Requires samples sorted by timestamp ascending.
inline WindowedFeatures window(std::span<const SensorSample> samples, WindowSpec spec,
                               std::int64_t t_now) {
    if (spec.duration_s <= 0) throw ContractError("window duration must be positive");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].t < samples[i - 1].t) {
            throw ContractError("samples must be sorted by timestamp ascending");
        }
    }

    const std::int64_t lo = t_now - spec.duration_s;  // exclusive
    auto begin = std::upper_bound(samples.begin(), samples.end(), lo,
                                  [](std::int64_t v, const SensorSample& s) { return v < s.t; });
    auto end = std::upper_bound(samples.begin(), samples.end(), t_now,
                                [](std::int64_t v, const SensorSample& s) { return v < s.t; });

    WindowedFeatures out;
    out.window_end = t_now;
    for (auto it = begin; it != end; ++it) {
        auto& slot = out[it->channel];
        if (!slot) {
            slot = ChannelAggregate{1, it->value, it->value, it->value, it->value, it->t, {}};
        } else {
            slot->count += 1;
            slot->sum += it->value;
            slot->min = std::min(slot->min, it->value);
            slot->max = std::max(slot->max, it->value);
            slot->last_t = it->t;  // samples iterate in ascending time
        }
        if (it->value > 0.0) slot->last_positive_t = it->t;
    }
    for (auto& slot : out.channels) {
        if (!slot) continue;
        // mean clamped into [min, max] so rounding can never push it outside
        double m = slot->sum / static_cast<double>(slot->count);
        slot->mean = std::clamp(m, slot->min, slot->max);
    }
    return out;
}

}  // namespace physiorec
