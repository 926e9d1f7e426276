#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "physiorec/rng.hpp"
#include "physiorec/sensor_stream.hpp"

using namespace physiorec;

namespace {

SensorSample hr(std::int64_t t, double v) { return {t, SensorChannel::HeartRate, v}; }

// Random valid sample stream for property tests.
std::vector<SensorSample> random_samples(Rng& rng, std::size_t n) {
    std::vector<SensorSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SensorSample s;
        s.t = static_cast<std::int64_t>(rng.next_below(100000));
        s.channel = kChannelOrder[rng.next_below(kNumChannels)];
        switch (s.channel) {
            case SensorChannel::HeartRate: s.value = rng.next_in(20.0, 250.0); break;
            case SensorChannel::AccelMagnitude: s.value = rng.next_in(0.0, 30.0); break;
            case SensorChannel::SkinConductance: s.value = rng.next_in(0.0, 50.0); break;
            case SensorChannel::FeedingGesture: s.value = rng.next_below(2) ? 1.0 : 0.0; break;
            case SensorChannel::SleepInterval: s.value = rng.next_in(0.0, 30000.0); break;
            case SensorChannel::AlcoholProxy: s.value = rng.next_unit(); break;
        }
        out.push_back(s);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const SensorSample& a, const SensorSample& b) { return a.t < b.t; });
    return out;
}

}  // namespace

TEST_CASE("parse: empty input yields empty sequence") {
    CHECK(parse_sensor_log("").empty());
    CHECK(parse_sensor_log("\n\n  \n").empty());
}

TEST_CASE("parse: single record round-trips its fields") {
    auto samples = parse_sensor_log(R"({"t":100,"ch":"heart_rate","v":72})");
    REQUIRE(samples.size() == 1);
    CHECK(samples[0].t == 100);
    CHECK(samples[0].channel == SensorChannel::HeartRate);
    CHECK(samples[0].value == doctest::Approx(72.0));
}

TEST_CASE("parse: output is sorted by timestamp for either input permutation") {
    const std::string a = R"({"t":200,"ch":"heart_rate","v":60})";
    const std::string b = R"({"t":100,"ch":"heart_rate","v":80})";
    for (const std::string& text : {a + "\n" + b + "\n", b + "\n" + a + "\n"}) {
        auto samples = parse_sensor_log(text);
        REQUIRE(samples.size() == 2);
        CHECK(samples[0].t == 100);
        CHECK(samples[1].t == 200);
    }
}

TEST_CASE("parse: equal timestamps keep input order") {
    auto samples = parse_sensor_log("{\"t\":100,\"ch\":\"heart_rate\",\"v\":72}\n"
                                    "{\"t\":100,\"ch\":\"heart_rate\",\"v\":80}\n");
    REQUIRE(samples.size() == 2);
    CHECK(samples[0].value == doctest::Approx(72.0));
    CHECK(samples[1].value == doctest::Approx(80.0));
}

TEST_CASE("parse: malformed line reports its line number") {
    const std::string text = "{\"t\":100,\"ch\":\"heart_rate\",\"v\":72}\n"
                             "not json\n";
    try {
        parse_sensor_log(text);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("parse: schema violations name the field") {
    CHECK_THROWS_AS(parse_sensor_log(R"({"t":1.5,"ch":"heart_rate","v":72})"), ParseError);
    CHECK_THROWS_AS(parse_sensor_log(R"({"t":1,"ch":"pulse","v":72})"), ParseError);
    CHECK_THROWS_AS(parse_sensor_log(R"({"t":1,"ch":"heart_rate"})"), ParseError);
    CHECK_THROWS_AS(parse_sensor_log(R"([1,2,3])"), ParseError);
}

TEST_CASE("parse: out-of-range value names channel and bound") {
    try {
        parse_sensor_log(R"({"t":1,"ch":"heart_rate","v":300})");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("heart_rate") != std::string::npos);
        CHECK(what.find("250") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_sensor_log(R"({"t":1,"ch":"accel_magnitude","v":-0.1})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_sensor_log(R"({"t":1,"ch":"feeding_gesture","v":0.5})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_sensor_log(R"({"t":1,"ch":"alcohol_proxy","v":1.2})"),
                    ValidationError);
}

TEST_CASE("property: parse-serialize-parse is the identity") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        auto samples = random_samples(rng, rng.next_below(40));
        auto again = parse_sensor_log(serialize_sensor_log(samples));
        CHECK(again == samples);
    }
}

TEST_CASE("window: empty window marks every channel missing") {
    auto f = window({}, WindowSpec{60}, 1000);
    CHECK(f.window_end == 1000);
    for (const auto& slot : f.channels) CHECK(!slot.has_value());
}

TEST_CASE("window: heart-rate aggregates over {60, 80}") {
    std::vector<SensorSample> samples = {hr(10, 60.0), hr(20, 80.0)};
    auto f = window(samples, WindowSpec{100}, 50);
    const auto& agg = f[SensorChannel::HeartRate];
    REQUIRE(agg.has_value());
    CHECK(agg->count == 2);
    CHECK(agg->mean == doctest::Approx(70.0));
    CHECK(agg->min == doctest::Approx(60.0));
    CHECK(agg->max == doctest::Approx(80.0));
    CHECK(agg->sum == doctest::Approx(140.0));
    CHECK(agg->last_t == 20);
}

TEST_CASE("window: half-open boundary excludes t_now - duration, includes t_now") {
    std::vector<SensorSample> samples = {hr(900, 60.0), hr(1000, 80.0)};
    auto f = window(samples, WindowSpec{100}, 1000);
    const auto& agg = f[SensorChannel::HeartRate];
    REQUIRE(agg.has_value());
    CHECK(agg->count == 1);  // the t=900 sample sits exactly on the excluded edge
    CHECK(agg->mean == doctest::Approx(80.0));
}

TEST_CASE("window: unsorted input is a contract violation") {
    std::vector<SensorSample> samples = {hr(20, 60.0), hr(10, 80.0)};
    CHECK_THROWS_AS(window(samples, WindowSpec{100}, 50), ContractError);
    CHECK_THROWS_AS(window({}, WindowSpec{0}, 50), ContractError);
}

TEST_CASE("window: tracks the newest positive gesture timestamp") {
    std::vector<SensorSample> samples = {
        {10, SensorChannel::FeedingGesture, 1.0},
        {20, SensorChannel::FeedingGesture, 0.0},
    };
    auto f = window(samples, WindowSpec{100}, 50);
    const auto& agg = f[SensorChannel::FeedingGesture];
    REQUIRE(agg.has_value());
    CHECK(agg->count == 2);
    REQUIRE(agg->last_positive_t.has_value());
    CHECK(*agg->last_positive_t == 10);
    CHECK(agg->last_t == 20);
}

TEST_CASE("property: per-channel sum equals mean * count") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto samples = random_samples(rng, 1 + rng.next_below(60));
        auto f = window(samples, WindowSpec{50000}, 100000);
        for (const auto& slot : f.channels) {
            if (!slot) continue;
            double expected = slot->mean * static_cast<double>(slot->count);
            CHECK(std::abs(slot->sum - expected) <=
                  1e-9 * std::max(1.0, std::abs(slot->sum)));
            CHECK(slot->min <= slot->mean);
            CHECK(slot->mean <= slot->max);
        }
    }
}

TEST_CASE("property: samples outside the window never change the result") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto inside = random_samples(rng, 1 + rng.next_below(30));
        const std::int64_t t_now = 100000;
        const WindowSpec spec{1000};
        for (auto& s : inside) s.t = t_now - static_cast<std::int64_t>(rng.next_below(1000));

        auto outside_before = random_samples(rng, rng.next_below(10));
        for (auto& s : outside_before) s.t = t_now - spec.duration_s - static_cast<std::int64_t>(rng.next_below(500));
        auto outside_after = random_samples(rng, rng.next_below(10));
        for (auto& s : outside_after) s.t = t_now + 1 + static_cast<std::int64_t>(rng.next_below(500));

        std::vector<SensorSample> all;
        all.insert(all.end(), outside_before.begin(), outside_before.end());
        all.insert(all.end(), inside.begin(), inside.end());
        all.insert(all.end(), outside_after.begin(), outside_after.end());
        std::stable_sort(all.begin(), all.end(),
                         [](const SensorSample& a, const SensorSample& b) { return a.t < b.t; });
        std::stable_sort(inside.begin(), inside.end(),
                         [](const SensorSample& a, const SensorSample& b) { return a.t < b.t; });

        CHECK(window(all, spec, t_now) == window(inside, spec, t_now));
    }
}
