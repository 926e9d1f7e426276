#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "physiorec/error.hpp"
#include "physiorec/recommender.hpp"
#include "physiorec/rng.hpp"
#include "physiorec/types.hpp"

namespace physiorec {

// One observed (condition vector, chosen category) pair.
struct FeedbackEvent {
    ConditionVector pc;
    ActivityCategory chosen = ActivityCategory::OutdoorsRecreation;
    std::int64_t t = 0;

    bool operator==(const FeedbackEvent&) const = default;
};

struct LearningParams {
    double eta = 0.1;      // step size
    int epochs = 20;
    double l2 = 1e-4;      // ridge penalty
    std::uint64_t seed = 1;
    double w_max = kDefaultWeightCap;  // weight entries clamped to [-w_max, w_max]
};

// Default qualitative structure of the condition-to-activity influences:
// active pulls toward outdoors and nightlife; relaxed toward arts; tired and
// drunk toward residence and away from outdoors (tired also away from
// nightlife); hungry toward food; stressed toward residence and calm
// outdoors, away from nightlife.
inline SignPrior default_sign_prior() {
    SignPrior p;
    //                 or  ae  fd  rs  nl
    p.s = {{{+1,  0,  0,  0, +1},    // active
            { 0, +1,  0,  0,  0},    // relaxed
            {-1,  0,  0, +1, -1},    // tired
            {-1,  0,  0, +1,  0},    // drunk
            { 0,  0, +1,  0,  0},    // hungry
            {+1,  0,  0, +1, -1}}};  // stressed
    return p;
}

// w[i][j] = prior[i][j] * magnitude.
inline WeightMatrix init_weights(const SignPrior& prior, double magnitude) {
    if (!(magnitude >= 0.0)) throw ContractError("init magnitude must be >= 0");
    WeightMatrix w;
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        for (std::size_t j = 0; j < kNumCategories; ++j) {
            int s = prior.s[i][j];
            if (s < -1 || s > 1) throw ValidationError("sign prior entries must be -1, 0 or +1");
            w.w[i][j] = static_cast<double>(s) * magnitude;
        }
    }
    return w;
}

// Softmax over the five category scores, max-shifted for stability.
inline std::array<double, kNumCategories> softmax(const AriVector& z) {
    double m = z.a[0];
    for (double x : z.a) m = std::max(m, x);
    std::array<double, kNumCategories> q{};
    double sum = 0.0;
    for (std::size_t j = 0; j < kNumCategories; ++j) {
        q[j] = std::exp(z.a[j] - m);
        sum += q[j];
    }
    for (double& x : q) x /= sum;
    return q;
}

// One multinomial-logistic gradient step on the log-likelihood of the
// observed choice, with L2 shrinkage:
//
//   q = softmax(pc . w),  y = one-hot(chosen)
//   w'[i][j] = w[i][j] + eta * pc[i] * (y[j] - q[j]) - eta * l2 * w[i][j]
//
// then clamped entrywise to [-w_max, w_max]. Returns a new matrix.
inline WeightMatrix update(const WeightMatrix& w, const FeedbackEvent& e,
                           const LearningParams& p) {
    const auto q = softmax(compute_ari(e.pc, w));
    const auto chosen = static_cast<std::size_t>(e.chosen);
    WeightMatrix out;
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        for (std::size_t j = 0; j < kNumCategories; ++j) {
            double y = (j == chosen) ? 1.0 : 0.0;
            double grad = e.pc.v[i] * (y - q[j]);
            double next = w.w[i][j] + p.eta * grad - p.eta * p.l2 * w.w[i][j];
            out.w[i][j] = std::clamp(next, -p.w_max, p.w_max);
        }
    }
    return out;
}

// Epoch-shuffled stochastic training over the event log. Initializes from
// the sign prior at magnitude 0.1; fully determined by (events, prior, params).
inline WeightMatrix fit(const std::vector<FeedbackEvent>& events, const SignPrior& prior,
                        const LearningParams& p) {
    if (events.empty()) throw ContractError("fit requires a non-empty event sequence");

    WeightMatrix w = init_weights(prior, 0.1);
    Rng rng(p.seed, 0x66697473ULL);
    std::vector<std::size_t> order(events.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int epoch = 0; epoch < p.epochs; ++epoch) {
        // Fisher-Yates with the seeded stream; std::shuffle is not portable
        for (std::size_t k = order.size(); k > 1; --k) {
            std::size_t j = static_cast<std::size_t>(rng.next_below(k));
            std::swap(order[k - 1], order[j]);
        }
        for (std::size_t idx : order) {
            w = update(w, events[idx], p);
        }
    }
    return w;
}

}  // namespace physiorec
