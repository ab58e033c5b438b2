#include "regaudit/scoring.hpp"

#include "regaudit/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace regaudit {

const EventStandard& ScoringStandard::event(const std::string& name) const {
    for (const auto& e : events) {
        if (e.name == name) {
            return e;
        }
    }
    throw input_error(fmt::format("standard has no event '{}'", name));
}

int ScoringStandard::tier_minimum(const std::string& tier) const {
    auto it = tiers.find(tier);
    if (it == tiers.end()) {
        throw input_error(fmt::format("standard has no tier '{}'", tier));
    }
    return it->second;
}

ScoringStandard make_standard(std::vector<EventStandard> events, std::map<std::string, int> tiers) {
    if (events.empty()) {
        throw input_error("standard has no events");
    }
    std::set<std::string> names;
    for (auto& e : events) {
        if (!names.insert(e.name).second) {
            throw input_error(fmt::format("duplicate event '{}'", e.name));
        }
        if (e.anchors.size() < 2) {
            throw input_error(fmt::format("event '{}' needs at least two anchors", e.name));
        }
        for (std::size_t i = 1; i < e.anchors.size(); ++i) {
            const auto& better = e.anchors[i - 1];
            const auto& worse = e.anchors[i];
            if (!(better.points > worse.points)) {
                throw input_error(fmt::format("event '{}': anchors must be sorted by points, descending", e.name));
            }
            const bool ok = e.direction == Direction::higher_is_better ? better.threshold > worse.threshold
                                                                       : better.threshold < worse.threshold;
            if (!ok) {
                throw input_error(
                    fmt::format("event '{}': thresholds are not monotone in the direction of improvement", e.name));
            }
        }
        if (e.anchors.front().points > 100 || e.anchors.back().points < 0) {
            throw input_error(fmt::format("event '{}': anchor points must lie in [0, 100]", e.name));
        }
    }
    for (const auto& [tier, minimum] : tiers) {
        for (const auto& e : events) {
            if (minimum > e.anchors.front().points) {
                throw input_error(
                    fmt::format("tier '{}' requires {} points, but '{}' tops out at {}", tier, minimum, e.name,
                                e.anchors.front().points));
            }
        }
    }
    return ScoringStandard{std::move(events), std::move(tiers)};
}

double wathen_1rm(double weight, int reps) {
    if (!(weight > 0.0)) {
        throw input_error("weight must be positive");
    }
    if (reps < 1) {
        throw input_error("repetitions must be at least 1");
    }
    return 100.0 * weight / (48.8 + 53.8 * std::exp(-0.075 * reps));
}

int score_event(const ScoringStandard& standard, const std::string& event, double value) {
    const auto& e = standard.event(event);
    if (!std::isfinite(value)) {
        throw input_error(fmt::format("non-finite score for '{}'", event));
    }
    // orient so larger is always better
    const double sign = e.direction == Direction::higher_is_better ? 1.0 : -1.0;
    const double v = sign * value;
    const auto& top = e.anchors.front();
    const auto& bottom = e.anchors.back();

    double points = 0.0;
    if (v >= sign * top.threshold) {
        points = top.points;
    } else if (v <= sign * bottom.threshold) {
        points = bottom.points;
    } else {
        for (std::size_t i = 1; i < e.anchors.size(); ++i) {
            const auto& hi = e.anchors[i - 1];
            const auto& lo = e.anchors[i];
            if (v >= sign * lo.threshold) {
                const double t = (v - sign * lo.threshold) / (sign * hi.threshold - sign * lo.threshold);
                points = lo.points + t * (hi.points - lo.points);
                break;
            }
        }
    }
    // 1e-9 absorbs representation error at exact anchors
    const int floored = static_cast<int>(std::floor(points + 1e-9));
    return std::clamp(floored, 0, 100);
}

Evaluation evaluate(const ScoringStandard& standard, const std::string& tier,
                    const std::map<std::string, double>& scores) {
    const int minimum = standard.tier_minimum(tier);
    for (const auto& [name, value] : scores) {
        standard.event(name);
    }
    Evaluation out;
    out.pass = true;
    for (const auto& e : standard.events) {
        auto it = scores.find(e.name);
        if (it == scores.end()) {
            throw input_error(fmt::format("missing score for event '{}'", e.name));
        }
        const int pts = score_event(standard, e.name, it->second);
        out.points[e.name] = pts;
        out.pass = out.pass && pts >= minimum;
    }
    return out;
}

PassRateReport pass_rates(const Cohort& cohort, const ScoringStandard& standard, const std::string& tier,
                          const std::string& group_by) {
    const int minimum = standard.tier_minimum(tier);
    auto g = std::find(cohort.group_columns.begin(), cohort.group_columns.end(), group_by);
    if (g == cohort.group_columns.end()) {
        throw input_error(fmt::format("cohort has no group column '{}'", group_by));
    }
    const auto group_idx = static_cast<std::size_t>(g - cohort.group_columns.begin());

    std::vector<std::size_t> event_idx;
    for (const auto& e : standard.events) {
        auto it = std::find(cohort.event_columns.begin(), cohort.event_columns.end(), e.name);
        if (it == cohort.event_columns.end()) {
            throw input_error(fmt::format("cohort lacks event column '{}'", e.name));
        }
        event_idx.push_back(static_cast<std::size_t>(it - cohort.event_columns.begin()));
    }

    struct Tally {
        std::size_t total = 0;
        std::size_t overall = 0;
        std::vector<std::size_t> per_event;
    };
    std::map<std::string, Tally> tallies;
    PassRateReport report{tier, group_by, {}, {}};
    std::size_t unlabeled = 0;

    for (std::size_t r = 0; r < cohort.size(); ++r) {
        const auto& label = cohort.groups[r][group_idx];
        if (label.empty()) {
            ++unlabeled;
            continue;
        }
        auto& t = tallies[label];
        if (t.per_event.empty()) {
            t.per_event.assign(standard.events.size(), 0);
        }
        ++t.total;
        bool all = true;
        for (std::size_t j = 0; j < standard.events.size(); ++j) {
            const int pts = score_event(standard, standard.events[j].name, cohort.events[r][event_idx[j]]);
            if (pts >= minimum) {
                ++t.per_event[j];
            } else {
                all = false;
            }
        }
        if (all) {
            ++t.overall;
        }
    }
    if (unlabeled > 0) {
        report.warnings.push_back(
            fmt::format("{} row(s) with an empty '{}' label excluded", unlabeled, group_by));
    }

    for (const auto& [label, t] : tallies) {
        GroupPassRates rates;
        rates.group = label;
        rates.total = t.total;
        const auto denom = static_cast<double>(t.total);
        for (std::size_t j = 0; j < standard.events.size(); ++j) {
            rates.event_rates[standard.events[j].name] = static_cast<double>(t.per_event[j]) / denom;
        }
        rates.overall = static_cast<double>(t.overall) / denom;
        report.groups.push_back(std::move(rates));
    }
    return report;
}

ImpactReport impact_ratio(const std::map<std::string, double>& rates) {
    if (rates.size() < 2) {
        throw input_error("impact ratio needs at least two groups");
    }
    ImpactReport report;
    report.rates = rates;
    auto lowest = rates.begin();
    auto highest = rates.begin();
    for (auto it = rates.begin(); it != rates.end(); ++it) {
        if (!(it->second >= 0.0 && it->second <= 1.0)) {
            throw input_error(fmt::format("rate for '{}' is {}, outside [0,1]", it->first, it->second));
        }
        if (it->second < lowest->second) {
            lowest = it;
        }
        if (it->second > highest->second) {
            highest = it;
        }
    }
    if (highest->second == 0.0) {
        throw degenerate_error("every group has a zero selection rate");
    }
    report.lowest_group = lowest->first;
    report.highest_group = highest->first;
    report.ratio = lowest->second / highest->second;
    report.flagged = report.ratio < kFourFifths;
    return report;
}

double difficulty_ratio(FailCount a, FailCount b) {
    if (a.total <= 0 || b.total <= 0) {
        throw input_error("totals must be positive");
    }
    if (a.fails < 0 || a.fails > a.total || b.fails < 0 || b.fails > b.total) {
        throw input_error("fail counts must lie between 0 and the total");
    }
    if (b.fails == 0) {
        throw degenerate_error("reference group has no failures; ratio is infinite");
    }
    const double rate_a = static_cast<double>(a.fails) / static_cast<double>(a.total);
    const double rate_b = static_cast<double>(b.fails) / static_cast<double>(b.total);
    return rate_a / rate_b;
}

} // namespace regaudit
