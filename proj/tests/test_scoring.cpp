#include "support.hpp"

#include "regaudit/errors.hpp"
#include "regaudit/io.hpp"
#include "regaudit/scoring.hpp"

#include <doctest.h>

#include <cmath>

using namespace regaudit;
using doctest::Approx;

namespace {

const ScoringStandard& acft() {
    static const auto s = io::load_standard(testing::asset("standards/acft.json"));
    return s;
}

std::map<std::string, double> at_anchor(int points) {
    std::map<std::string, double> out;
    for (const auto& e : acft().events) {
        for (const auto& a : e.anchors) {
            if (a.points == points) out[e.name] = a.threshold;
        }
    }
    return out;
}

Cohort small_cohort(std::vector<std::pair<std::string, double>> deadlifts) {
    Cohort c;
    c.event_columns = {"deadlift"};
    c.group_columns = {"gender"};
    for (auto& [g, v] : deadlifts) {
        c.events.push_back({v});
        c.groups.push_back({g});
    }
    return c;
}

ScoringStandard deadlift_only() {
    return make_standard({acft().event("deadlift")}, {{"gold", 60}, {"black", 70}});
}

} // namespace

TEST_CASE("Wathen one-rep max") {
    CHECK(std::abs(wathen_1rm(185, 5) - 215.7) <= 0.1);
    CHECK(wathen_1rm(185, 5) == Approx(18500.0 / (48.8 + 53.8 * std::exp(-0.375))));
    CHECK(std::abs(wathen_1rm(100, 1) / 100.0 - 1.0131) <= 1e-4);
    // linear in weight, so it vanishes as the weight does
    CHECK(wathen_1rm(1e-9, 3) == Approx(1e-9 * wathen_1rm(1, 3)));
    CHECK_THROWS_AS(wathen_1rm(0, 3), input_error);
    CHECK_THROWS_AS(wathen_1rm(100, 0), input_error);
}

TEST_CASE("deadlift points from the bundled anchors") {
    CHECK(score_event(acft(), "deadlift", 140) == 60);
    CHECK(score_event(acft(), "deadlift", 340) == 100);
    CHECK(score_event(acft(), "deadlift", 139) == 59); // 60·(59/60) = 59.0, floored
    CHECK(score_event(acft(), "deadlift", 80) == 0);
    CHECK(score_event(acft(), "deadlift", 500) == 100);
    CHECK(score_event(acft(), "deadlift", 10) == 0);
    CHECK(score_event(acft(), "deadlift", 270) == 85);
    CHECK_THROWS_AS(score_event(acft(), "bench", 100), input_error);
}

TEST_CASE("timed events score in the lower-is-better direction") {
    CHECK(score_event(acft(), "run", 13 * 60 + 30) == 100);
    CHECK(score_event(acft(), "run", 21 * 60) == 60);
    CHECK(score_event(acft(), "run", 21 * 60 + 1) == 59);
    CHECK(score_event(acft(), "run", 30 * 60) == 0);
    CHECK(score_event(acft(), "sdc", 60) == 100);
}

TEST_CASE("evaluate against tiers") {
    const auto gold = at_anchor(60);
    CHECK(evaluate(acft(), "gold", gold).pass);
    CHECK_FALSE(evaluate(acft(), "gray", gold).pass);

    auto one_short = at_anchor(100);
    one_short["deadlift"] = 139;
    CHECK_FALSE(evaluate(acft(), "gold", one_short).pass);
    CHECK(evaluate(acft(), "gold", one_short).points.at("deadlift") == 59);

    const auto black = at_anchor(70);
    for (const auto* tier : {"black", "gray", "gold"}) {
        CHECK(evaluate(acft(), tier, black).pass);
    }
    auto missing = gold;
    missing.erase("run");
    CHECK_THROWS_AS(evaluate(acft(), "gold", missing), input_error);
    CHECK_THROWS_AS(evaluate(acft(), "platinum", gold), input_error);
}

TEST_CASE("make_standard rejects malformed standards") {
    EventStandard e{"lift", "lb", Direction::higher_is_better, {{100, 300}, {60, 150}, {0, 50}}};
    CHECK_NOTHROW(make_standard({e}, {{"gold", 60}}));
    CHECK_THROWS_AS(make_standard({}, {}), input_error);
    CHECK_THROWS_AS(make_standard({e, e}, {}), input_error);
    auto unsorted = e;
    std::swap(unsorted.anchors[0], unsorted.anchors[1]);
    CHECK_THROWS_AS(make_standard({unsorted}, {}), input_error);
    auto wrong_way = e;
    wrong_way.direction = Direction::lower_is_better;
    CHECK_THROWS_AS(make_standard({wrong_way}, {}), input_error);
    CHECK_THROWS_AS(make_standard({e}, {{"mythic", 101}}), input_error);
    auto single = e;
    single.anchors.resize(1);
    CHECK_THROWS_AS(make_standard({single}, {}), input_error);
}

TEST_CASE("pass rates count per group") {
    // 10 women, 3 fail the deadlift; 4 men all pass
    std::vector<std::pair<std::string, double>> rows;
    for (int i = 0; i < 10; ++i) rows.emplace_back("female", i < 3 ? 100.0 : 200.0);
    for (int i = 0; i < 4; ++i) rows.emplace_back("male", 300.0);
    const auto r = pass_rates(small_cohort(rows), deadlift_only(), "gold", "gender");
    REQUIRE(r.groups.size() == 2);
    CHECK(r.groups[0].group == "female");
    CHECK(r.groups[0].total == 10);
    CHECK(r.groups[0].event_rates.at("deadlift") == Approx(0.7));
    CHECK(r.groups[0].overall == Approx(0.7));
    CHECK(r.groups[1].overall == 1.0);
    CHECK(r.warnings.empty());
}

TEST_CASE("all-pass cohort has ratio one") {
    const auto r = pass_rates(small_cohort({{"a", 300}, {"b", 310}, {"a", 290}}), deadlift_only(), "gold", "gender");
    std::map<std::string, double> overall;
    for (const auto& g : r.groups) overall[g.group] = g.overall;
    const auto imp = impact_ratio(overall);
    CHECK(imp.ratio == 1.0);
    CHECK_FALSE(imp.flagged);
}

TEST_CASE("empty group labels are excluded with a warning") {
    const auto r = pass_rates(small_cohort({{"a", 300}, {"", 310}, {"b", 100}}), deadlift_only(), "gold", "gender");
    CHECK(r.groups.size() == 2);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("1 row") != std::string::npos);
    CHECK_THROWS_AS(pass_rates(small_cohort({{"a", 1}}), deadlift_only(), "gold", "age"), input_error);
    CHECK_THROWS_AS(pass_rates(small_cohort({{"a", 1}}), acft(), "gold", "gender"), input_error);
}

TEST_CASE("impact ratio") {
    const auto r = impact_ratio({{"female", 0.32}, {"male", 0.89}});
    CHECK(std::abs(r.ratio - 0.360) <= 0.001);
    CHECK(r.flagged);
    CHECK(r.lowest_group == "female");
    CHECK(r.highest_group == "male");
    CHECK(impact_ratio({{"a", 0.5}, {"b", 0.5}}).ratio == 1.0);
    const auto edge = impact_ratio({{"a", 0.8}, {"b", 1.0}});
    CHECK(edge.ratio == 0.8);
    CHECK_FALSE(edge.flagged);
    CHECK_THROWS_AS(impact_ratio({{"a", 0.5}}), input_error);
    CHECK_THROWS_AS(impact_ratio({{"a", 0.0}, {"b", 0.0}}), degenerate_error);
    CHECK_THROWS_AS(impact_ratio({{"a", 1.2}, {"b", 0.5}}), input_error);
}

TEST_CASE("difficulty ratios from the Fort Sill counts") {
    CHECK(std::abs(difficulty_ratio({68, 112}, {3, 101}) - 20.4) <= 0.1);
    CHECK(std::abs(difficulty_ratio({46, 77}, {45, 95}) - 1.26) <= 0.02);
    CHECK(difficulty_ratio({5, 10}, {50, 100}) == 1.0);
    CHECK_THROWS_AS(difficulty_ratio({1, 10}, {0, 10}), degenerate_error);
    CHECK_THROWS_AS(difficulty_ratio({1, 0}, {1, 10}), input_error);
    CHECK_THROWS_AS(difficulty_ratio({11, 10}, {1, 10}), input_error);
}
