#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "physiorec/error.hpp"
#include "physiorec/types.hpp"

namespace physiorec {

// A concrete recommendable item inside one activity category.
struct Venue {
    std::string id;
    std::string name;
    ActivityCategory category = ActivityCategory::OutdoorsRecreation;
    double base_quality = 0.0;  // [0,1]

    bool operator==(const Venue&) const = default;
};

struct UserPreferences {
    static constexpr double kDefaultAffinity = 0.5;

    std::unordered_map<std::string, double> affinity;  // venue id -> [0,1]

    double affinity_for(const std::string& venue_id) const {
        auto it = affinity.find(venue_id);
        return it == affinity.end() ? kDefaultAffinity : it->second;
    }
};

struct ScoredVenue {
    Venue venue;
    double score = 0.0;
};

// Proactive-push policy knobs: minimum condition change (L-infinity) and a
// cooldown between pushes.
struct TriggerParams {
    double delta_threshold = 0.2;
    std::int64_t cooldown_s = 3600;
};

// Activity Recommendation Index: the row-vector-matrix product PC . W.
// Accumulation runs row-index ascending so results are bit-stable.
inline AriVector compute_ari(const ConditionVector& pc, const WeightMatrix& w) {
    AriVector ari;
    for (std::size_t j = 0; j < kNumCategories; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < kNumConditions; ++i) {
            acc += pc.v[i] * w.w[i][j];
        }
        ari.a[j] = acc;
    }
    return ari;
}

// Category with the highest ARI score; ties break toward the earliest
// category in canonical order. NaN entries are a contract violation.
inline ActivityCategory select_category(const AriVector& ari) {
    for (std::size_t j = 0; j < kNumCategories; ++j) {
        if (std::isnan(ari.a[j])) throw ContractError("ARI entry is NaN");
    }
    std::size_t best = 0;
    for (std::size_t j = 1; j < kNumCategories; ++j) {
        if (ari.a[j] > ari.a[best]) best = j;
    }
    return static_cast<ActivityCategory>(best);
}

// Top-k venues of the category, scored blend*base_quality + (1-blend)*affinity,
// descending; equal scores order by venue id ascending.
inline std::vector<ScoredVenue> rank_items(ActivityCategory category,
                                           const std::vector<Venue>& catalog,
                                           const UserPreferences& prefs, int k,
                                           double blend = 0.5) {
    if (k < 1) throw ContractError("rank_items requires k >= 1");
    std::vector<ScoredVenue> scored;
    for (const Venue& v : catalog) {
        if (v.category != category) continue;
        double score = blend * v.base_quality + (1.0 - blend) * prefs.affinity_for(v.id);
        scored.push_back({v, score});
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredVenue& a, const ScoredVenue& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.venue.id < b.venue.id;
    });
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
    return scored;
}

inline double linf_distance(const ConditionVector& a, const ConditionVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        d = std::max(d, std::abs(a.v[i] - b.v[i]));
    }
    return d;
}

// Push on first contact, afterwards only when the condition vector moved by
// at least delta_threshold (L-infinity) and the cooldown has elapsed. An
// absent last_push counts as infinitely old.
inline bool should_push(const std::optional<ConditionVector>& prev, const ConditionVector& cur,
                        std::optional<std::int64_t> last_push, std::int64_t now,
                        const TriggerParams& p) {
    if (last_push && now < *last_push) {
        throw ContractError("should_push requires now >= last_push");
    }
    if (!prev) return true;
    const bool moved = linf_distance(cur, *prev) >= p.delta_threshold;
    const bool cooled = !last_push || (now - *last_push >= p.cooldown_s);
    return moved && cooled;
}

}  // namespace physiorec
