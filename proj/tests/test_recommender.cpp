#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "physiorec/recommender.hpp"
#include "physiorec/rng.hpp"

using namespace physiorec;

namespace {

ConditionVector random_pc(Rng& rng) {
    ConditionVector pc;
    for (double& x : pc.v) x = rng.next_unit();
    return pc;
}

WeightMatrix random_w(Rng& rng, double cap = 10.0) {
    WeightMatrix w;
    for (auto& row : w.w) {
        for (double& x : row) x = rng.next_in(-cap, cap);
    }
    return w;
}

// Independent accumulation route: column-major over a transposed copy.
AriVector ari_oracle(const ConditionVector& pc, const WeightMatrix& w) {
    double wt[kNumCategories][kNumConditions];
    for (std::size_t i = 0; i < kNumConditions; ++i) {
        for (std::size_t j = 0; j < kNumCategories; ++j) wt[j][i] = w.w[i][j];
    }
    AriVector out;
    for (std::size_t j = 0; j < kNumCategories; ++j) {
        double acc = 0.0;
        for (std::size_t i = kNumConditions; i-- > 0;) acc += wt[j][i] * pc.v[i];
        out.a[j] = acc;
    }
    return out;
}

Venue venue(const std::string& id, ActivityCategory cat, double quality) {
    return {id, "venue " + id, cat, quality};
}

}  // namespace

TEST_CASE("compute_ari: zero vector annihilates") {
    Rng rng(1);
    auto ari = compute_ari(ConditionVector{}, random_w(rng));
    for (double x : ari.a) CHECK(x == 0.0);
}

TEST_CASE("compute_ari: basis vector extracts its row") {
    WeightMatrix w;
    w.w[0] = {2.0, -1.0, 0.0, 0.5, 0.0};
    ConditionVector pc;
    pc[Condition::Active] = 1.0;
    auto ari = compute_ari(pc, w);
    CHECK(ari.a[0] == 2.0);
    CHECK(ari.a[1] == -1.0);
    CHECK(ari.a[2] == 0.0);
    CHECK(ari.a[3] == 0.5);
    CHECK(ari.a[4] == 0.0);
}

TEST_CASE("compute_ari: matches the independent dot-product oracle") {
    Rng rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        auto pc = random_pc(rng);
        auto w = random_w(rng);
        auto got = compute_ari(pc, w);
        auto want = ari_oracle(pc, w);
        for (std::size_t j = 0; j < kNumCategories; ++j) {
            CHECK(std::abs(got.a[j] - want.a[j]) <= 1e-12);
        }
    }
}

TEST_CASE("select_category") {
    CHECK(select_category({{0.1, 0.9, 0.2, 0.0, 0.3}}) == ActivityCategory::ArtsEntertainment);
    CHECK(select_category({{0.0, 0.0, 0.0, 0.0, 0.0}}) == ActivityCategory::OutdoorsRecreation);
    CHECK(select_category({{0.5, 0.5, 0.4, 0.5, 0.2}}) == ActivityCategory::OutdoorsRecreation);

    AriVector nan_ari{{0.0, std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(select_category(nan_ari), ContractError);
}

TEST_CASE("rank_items") {
    UserPreferences prefs;

    SUBCASE("empty catalog yields empty list") {
        CHECK(rank_items(ActivityCategory::Food, {}, prefs, 3).empty());
    }
    SUBCASE("hand-scored ordering: 0.65 beats 0.45") {
        std::vector<Venue> catalog = {
            venue("cafe", ActivityCategory::Food, 0.4),
            venue("bistro", ActivityCategory::Food, 0.8),
        };
        auto ranked = rank_items(ActivityCategory::Food, catalog, prefs, 2);
        REQUIRE(ranked.size() == 2);
        CHECK(ranked[0].venue.id == "bistro");
        CHECK(ranked[0].score == doctest::Approx(0.65));
        CHECK(ranked[1].score == doctest::Approx(0.45));
    }
    SUBCASE("equal scores break by id ascending") {
        std::vector<Venue> catalog = {
            venue("b", ActivityCategory::Food, 0.6),
            venue("a", ActivityCategory::Food, 0.6),
        };
        auto ranked = rank_items(ActivityCategory::Food, catalog, prefs, 2);
        REQUIRE(ranked.size() == 2);
        CHECK(ranked[0].venue.id == "a");
    }
    SUBCASE("affinity moves the order") {
        prefs.affinity["cafe"] = 1.0;
        std::vector<Venue> catalog = {
            venue("cafe", ActivityCategory::Food, 0.4),
            venue("bistro", ActivityCategory::Food, 0.8),
        };
        auto ranked = rank_items(ActivityCategory::Food, catalog, prefs, 2);
        CHECK(ranked[0].venue.id == "cafe");  // 0.7 vs 0.65
    }
    SUBCASE("k truncates and k < 1 is a contract violation") {
        std::vector<Venue> catalog = {
            venue("a", ActivityCategory::Food, 0.2),
            venue("b", ActivityCategory::Food, 0.9),
        };
        auto ranked = rank_items(ActivityCategory::Food, catalog, prefs, 1);
        REQUIRE(ranked.size() == 1);
        CHECK(ranked[0].venue.id == "b");
        CHECK_THROWS_AS(rank_items(ActivityCategory::Food, catalog, prefs, 0), ContractError);
    }
}

TEST_CASE("property: rank_items output is sorted and category-pure") {
    Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Venue> catalog;
        UserPreferences prefs;
        std::size_t n = rng.next_below(30);
        for (std::size_t i = 0; i < n; ++i) {
            auto id = "v" + std::to_string(i);
            catalog.push_back(venue(id, kCategoryOrder[rng.next_below(kNumCategories)],
                                    rng.next_unit()));
            if (rng.next_below(2)) prefs.affinity[id] = rng.next_unit();
        }
        auto cat = kCategoryOrder[rng.next_below(kNumCategories)];
        auto ranked = rank_items(cat, catalog, prefs, 1 + static_cast<int>(rng.next_below(10)));
        for (std::size_t i = 0; i < ranked.size(); ++i) {
            CHECK(ranked[i].venue.category == cat);
            if (i > 0) CHECK(ranked[i - 1].score >= ranked[i].score);
        }
    }
}

TEST_CASE("should_push") {
    TriggerParams p{0.2, 3600};
    ConditionVector cur;
    cur[Condition::Active] = 0.5;

    SUBCASE("first contact always pushes") {
        CHECK(should_push(std::nullopt, cur, std::nullopt, 1000, p));
        CHECK(should_push(std::nullopt, cur, 990, 1000, p));
    }
    SUBCASE("zero delta never pushes") {
        CHECK(!should_push(cur, cur, std::nullopt, 10000, p));
        CHECK(!should_push(cur, cur, 1000, 100000, p));
    }
    SUBCASE("large delta inside the cooldown stays quiet") {
        ConditionVector prev = cur;
        prev[Condition::Hungry] = 0.0;
        ConditionVector now_pc = cur;
        now_pc[Condition::Hungry] = 0.3;
        CHECK(!should_push(prev, now_pc, 1000, 1010, p));  // pushed 10 s ago
        CHECK(should_push(prev, now_pc, 1000, 1000 + 3600, p));
        CHECK(should_push(prev, now_pc, std::nullopt, 1010, p));  // never pushed before
    }
    SUBCASE("delta below threshold stays quiet even when cooled") {
        ConditionVector prev = cur;
        ConditionVector now_pc = cur;
        now_pc[Condition::Hungry] = 0.19;
        CHECK(!should_push(prev, now_pc, 1000, 100000, p));
    }
    SUBCASE("now before last_push is a contract violation") {
        CHECK_THROWS_AS(should_push(cur, cur, 1000, 999, p), ContractError);
    }
}

TEST_CASE("property: ARI is linear and select_category scale-invariant") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        auto pc1 = random_pc(rng);
        auto pc2 = random_pc(rng);
        auto w = random_w(rng);
        double alpha = rng.next_in(0.0, 5.0);

        ConditionVector scaled;
        ConditionVector sum;
        for (std::size_t i = 0; i < kNumConditions; ++i) {
            scaled.v[i] = alpha * pc1.v[i];
            sum.v[i] = pc1.v[i] + pc2.v[i];
        }
        auto a1 = compute_ari(pc1, w);
        auto a2 = compute_ari(pc2, w);
        auto as = compute_ari(scaled, w);
        auto aa = compute_ari(sum, w);
        for (std::size_t j = 0; j < kNumCategories; ++j) {
            CHECK(std::abs(as.a[j] - alpha * a1.a[j]) <= 1e-12);
            CHECK(std::abs(aa.a[j] - (a1.a[j] + a2.a[j])) <= 1e-12);
        }
        CHECK(select_category(a1) == select_category(compute_ari(pc1, w)));  // deterministic
    }
}

TEST_CASE("property: monotone response to a single component") {
    Rng rng(78);
    for (int trial = 0; trial < 200; ++trial) {
        auto pc = random_pc(rng);
        auto w = random_w(rng);
        std::size_t i = rng.next_below(kNumConditions);
        std::size_t j = rng.next_below(kNumCategories);
        auto bumped = pc;
        bumped.v[i] += rng.next_in(0.0, 2.0);
        double before = compute_ari(pc, w).a[j];
        double after = compute_ari(bumped, w).a[j];
        if (w.w[i][j] > 0.0) CHECK(after >= before - 1e-12);
        if (w.w[i][j] < 0.0) CHECK(after <= before + 1e-12);
    }
}
