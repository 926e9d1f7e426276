#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace physiorec {

inline constexpr std::size_t kNumConditions = 6;
inline constexpr std::size_t kNumCategories = 5;

// Physiological conditions, in canonical row order.
enum class Condition : std::size_t {
    Active = 0,
    Relaxed,
    Tired,
    Drunk,
    Hungry,
    Stressed,
};

// Tourist activity categories, in canonical column order. The order is total
// and stable; ties are always broken toward the earlier member.
enum class ActivityCategory : std::size_t {
    OutdoorsRecreation = 0,
    ArtsEntertainment,
    Food,
    Residence,
    Nightlife,
};

inline constexpr std::array<Condition, kNumConditions> kConditionOrder = {
    Condition::Active,  Condition::Relaxed, Condition::Tired,
    Condition::Drunk,   Condition::Hungry,  Condition::Stressed,
};

inline constexpr std::array<ActivityCategory, kNumCategories> kCategoryOrder = {
    ActivityCategory::OutdoorsRecreation, ActivityCategory::ArtsEntertainment,
    ActivityCategory::Food,               ActivityCategory::Residence,
    ActivityCategory::Nightlife,
};

constexpr std::string_view condition_name(Condition c) {
    switch (c) {
        case Condition::Active:   return "active";
        case Condition::Relaxed:  return "relaxed";
        case Condition::Tired:    return "tired";
        case Condition::Drunk:    return "drunk";
        case Condition::Hungry:   return "hungry";
        case Condition::Stressed: return "stressed";
    }
    return "?";
}

// Short row labels used in the weight-matrix file format.
constexpr std::string_view condition_code(Condition c) {
    switch (c) {
        case Condition::Active:   return "a";
        case Condition::Relaxed:  return "r";
        case Condition::Tired:    return "t";
        case Condition::Drunk:    return "d";
        case Condition::Hungry:   return "h";
        case Condition::Stressed: return "s";
    }
    return "?";
}

constexpr std::string_view category_name(ActivityCategory c) {
    switch (c) {
        case ActivityCategory::OutdoorsRecreation: return "outdoors_recreation";
        case ActivityCategory::ArtsEntertainment:  return "arts_entertainment";
        case ActivityCategory::Food:               return "food";
        case ActivityCategory::Residence:          return "residence";
        case ActivityCategory::Nightlife:          return "nightlife";
    }
    return "?";
}

// Short column labels used in the weight-matrix file format.
constexpr std::string_view category_code(ActivityCategory c) {
    switch (c) {
        case ActivityCategory::OutdoorsRecreation: return "or";
        case ActivityCategory::ArtsEntertainment:  return "ae";
        case ActivityCategory::Food:               return "fd";
        case ActivityCategory::Residence:          return "rs";
        case ActivityCategory::Nightlife:          return "nl";
    }
    return "?";
}

inline std::optional<ActivityCategory> parse_category(std::string_view name) {
    for (ActivityCategory c : kCategoryOrder) {
        if (name == category_name(c)) return c;
    }
    return std::nullopt;
}

// Six normalized physiological-condition scores (active, relaxed, tired,
// drunk, hungry, stressed). Components live in [0,1] when produced by
// inference; the type itself stays open so algebraic identities (scaling,
// additivity) can be exercised on unnormalized vectors.
struct ConditionVector {
    std::array<double, kNumConditions> v{};

    double& operator[](Condition c) { return v[static_cast<std::size_t>(c)]; }
    double operator[](Condition c) const { return v[static_cast<std::size_t>(c)]; }
    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    bool operator==(const ConditionVector&) const = default;
};

// Five activity scores in canonical category order; the product PC . W.
struct AriVector {
    std::array<double, kNumCategories> a{};

    double& operator[](ActivityCategory c) { return a[static_cast<std::size_t>(c)]; }
    double operator[](ActivityCategory c) const { return a[static_cast<std::size_t>(c)]; }
    double& operator[](std::size_t j) { return a[j]; }
    double operator[](std::size_t j) const { return a[j]; }

    bool operator==(const AriVector&) const = default;
};

// 6x5 condition-to-activity association weights. Rows follow the condition
// order, columns the category order; w(j|i) is the pull of condition i toward
// category j.
struct WeightMatrix {
    std::array<std::array<double, kNumCategories>, kNumConditions> w{};

    double& at(Condition i, ActivityCategory j) {
        return w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    double at(Condition i, ActivityCategory j) const {
        return w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    bool operator==(const WeightMatrix&) const = default;
};

// Qualitative influence structure over the same 6x5 grid; entries in {-1,0,+1}.
struct SignPrior {
    std::array<std::array<int, kNumCategories>, kNumConditions> s{};

    int& at(Condition i, ActivityCategory j) {
        return s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    int at(Condition i, ActivityCategory j) const {
        return s[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    bool operator==(const SignPrior&) const = default;
};

// Default bound on weight magnitudes.
inline constexpr double kDefaultWeightCap = 10.0;

// Clamp to [0,1]. NaN maps to 0 so a poisoned intermediate can never escape
// as a condition score.
inline double clamp01(double x) {
    if (!(x > 0.0)) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

}  // namespace physiorec
