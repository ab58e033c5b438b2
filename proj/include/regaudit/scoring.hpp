#pragma once

#include "regaudit/distributions.hpp"

#include <map>
#include <string>
#include <vector>

namespace regaudit {

struct ScoreAnchor {
    int points = 0;
    double threshold = 0.0;

    bool operator==(const ScoreAnchor&) const = default;
};

struct EventStandard {
    std::string name;
    std::string units;
    Direction direction = Direction::higher_is_better;
    std::vector<ScoreAnchor> anchors; // points descending

    bool operator==(const EventStandard&) const = default;
};

/// Tiered test standard: per-event point anchors plus tier minimums.
struct ScoringStandard {
    std::vector<EventStandard> events;
    std::map<std::string, int> tiers;

    const EventStandard& event(const std::string& name) const;
    int tier_minimum(const std::string& tier) const;
};

/// Checks anchor ordering, threshold monotonicity and tier reachability.
ScoringStandard make_standard(std::vector<EventStandard> events, std::map<std::string, int> tiers);

/// One-repetition maximum from a multi-rep lift: 100·w / (48.8 + 53.8·e^(-0.075·reps)).
double wathen_1rm(double weight, int reps);

/// Linear between neighbouring anchors, floored, clamped to [0, 100].
int score_event(const ScoringStandard& standard, const std::string& event, double value);

struct Evaluation {
    bool pass = false;
    std::map<std::string, int> points;
};

Evaluation evaluate(const ScoringStandard& standard, const std::string& tier,
                    const std::map<std::string, double>& scores);

/// Subjects with numeric event columns and categorical group columns.
struct Cohort {
    std::vector<std::string> event_columns;
    std::vector<std::string> group_columns;
    std::vector<std::vector<double>> events;      // row-major, aligned with event_columns
    std::vector<std::vector<std::string>> groups; // row-major, aligned with group_columns

    std::size_t size() const { return events.size(); }
};

struct GroupPassRates {
    std::string group;
    std::size_t total = 0;
    std::map<std::string, double> event_rates;
    double overall = 0.0;
};

struct PassRateReport {
    std::string tier;
    std::string group_by;
    std::vector<GroupPassRates> groups; // sorted by group label
    std::vector<std::string> warnings;
};

PassRateReport pass_rates(const Cohort& cohort, const ScoringStandard& standard, const std::string& tier,
                          const std::string& group_by);

struct ImpactReport {
    std::map<std::string, double> rates;
    double ratio = 1.0;
    std::string lowest_group;
    std::string highest_group;
    bool flagged = false;
};

inline constexpr double kFourFifths = 0.8;

/// min rate / max rate; flagged when strictly below 0.8.
ImpactReport impact_ratio(const std::map<std::string, double>& rates);

struct FailCount {
    long fails = 0;
    long total = 0;
};

/// (fails_a/total_a) / (fails_b/total_b): how many times more often `a` fails than `b`.
double difficulty_ratio(FailCount a, FailCount b);

} // namespace regaudit
