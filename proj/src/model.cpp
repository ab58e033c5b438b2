#include "regaudit/model.hpp"

#include "regaudit/errors.hpp"
#include "regaudit/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace regaudit {

std::optional<std::size_t> RegressionModel::find(const std::string& name) const {
    for (std::size_t i = 0; i < predictors.size(); ++i) {
        if (predictors[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

RegressionModel make_model(std::string label, double constant, std::vector<PredictorSummary> predictors,
                           ReportedOutcome reported) {
    if (predictors.empty()) {
        throw input_error(fmt::format("model '{}' has no predictors", label));
    }
    if (!std::isfinite(constant)) {
        throw input_error(fmt::format("model '{}': constant is not finite", label));
    }
    std::set<std::string> seen;
    for (const auto& p : predictors) {
        if (p.name.empty()) {
            throw input_error(fmt::format("model '{}': predictor with empty name", label));
        }
        if (!seen.insert(p.name).second) {
            throw input_error(fmt::format("model '{}': duplicate predictor '{}'", label, p.name));
        }
        if (!std::isfinite(p.coefficient) || !std::isfinite(p.mean) || !std::isfinite(p.sd)) {
            throw input_error(fmt::format("model '{}': predictor '{}' has a non-finite value", label, p.name));
        }
        if (p.sd < 0.0) {
            throw input_error(fmt::format("model '{}': predictor '{}' has negative sd {}", label, p.name, p.sd));
        }
    }
    if (reported.sd && *reported.sd < 0.0) {
        throw input_error(fmt::format("model '{}': reported sd is negative", label));
    }
    if (reported.r2 && !(*reported.r2 >= 0.0 && *reported.r2 <= 1.0)) {
        throw input_error(fmt::format("model '{}': reported r2 {} outside [0,1]", label, *reported.r2));
    }
    if (reported.n) {
        const auto k = static_cast<int>(predictors.size()) + 1;
        if (*reported.n <= k) {
            throw input_error(fmt::format("model '{}': sample size n={} must exceed coefficient count {}", label,
                                          *reported.n, k));
        }
    }
    return RegressionModel{std::move(label), constant, std::move(predictors), reported};
}

std::optional<std::size_t> ObservationTable::column_index(const std::string& name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> ObservationTable::column(const std::string& name) const {
    const auto idx = column_index(name);
    if (!idx) {
        throw input_error(fmt::format("no column named '{}'", name));
    }
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row[*idx]);
    }
    return out;
}

ObservationTable make_table(std::vector<std::string> columns, std::vector<std::vector<double>> rows,
                            std::optional<std::string> outcome_column) {
    std::set<std::string> seen;
    for (const auto& c : columns) {
        if (!seen.insert(c).second) {
            throw input_error(fmt::format("duplicate column '{}'", c));
        }
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != columns.size()) {
            throw input_error(
                fmt::format("row {} has {} values, expected {}", r, rows[r].size(), columns.size()));
        }
    }
    if (outcome_column && !seen.contains(*outcome_column)) {
        throw input_error(fmt::format("outcome column '{}' not in table", *outcome_column));
    }
    return ObservationTable{std::move(columns), std::move(rows), std::move(outcome_column)};
}

double predict(const RegressionModel& model, const std::map<std::string, double>& values) {
    for (const auto& [name, value] : values) {
        if (!model.find(name)) {
            throw input_error(fmt::format("'{}' is not a predictor of model '{}'", name, model.label));
        }
    }
    double total = model.constant;
    for (const auto& p : model.predictors) {
        auto it = values.find(p.name);
        if (it == values.end()) {
            throw input_error(fmt::format("missing value for predictor '{}'", p.name));
        }
        total += p.coefficient * it->second;
    }
    return total;
}

double predict_at_means(const RegressionModel& model) {
    double total = model.constant;
    for (const auto& p : model.predictors) {
        total += p.coefficient * p.mean;
    }
    return total;
}

ConsistencyReport consistency_check(const RegressionModel& model, const ConsistencyOptions& options) {
    ConsistencyReport report;
    report.predicted_mean = predict_at_means(model);

    double sum_sq = 0.0;
    for (const auto& p : model.predictors) {
        const double term = std::abs(p.coefficient * p.sd);
        report.sd_l1 += term;
        sum_sq += term * term;
    }
    report.sd_l2 = std::sqrt(sum_sq);
    // sqrt rounding can push a single-term L2 a hair above L1
    report.sd_l2 = std::min(report.sd_l2, report.sd_l1);

    report.reported_mean = model.reported.mean;
    report.reported_sd = model.reported.sd;

    if (model.reported.mean) {
        const double reported = *model.reported.mean;
        report.mean_abs_dev = std::abs(report.predicted_mean - reported);
        const double scale = std::abs(reported);
        const double rel = scale > 0.0 ? *report.mean_abs_dev / scale : std::numeric_limits<double>::infinity();
        if (*report.mean_abs_dev > 0.0 && rel > options.mean_relative_tolerance) {
            report.flags.push_back(fmt::format(
                "predicted mean {:.1f} deviates from reported mean {:.1f} by {:.1f}% (tolerance {:.1f}%)",
                report.predicted_mean, reported, 100.0 * rel, 100.0 * options.mean_relative_tolerance));
        }
    }
    if (model.reported.sd) {
        const double lo = report.sd_l2 * (1.0 - options.sd_band_slack);
        const double hi = report.sd_l1 * (1.0 + options.sd_band_slack);
        const double sd = *model.reported.sd;
        if (sd < lo || sd > hi) {
            report.flags.push_back(
                fmt::format("reported sd {:.1f} outside expected band [{:.1f}, {:.1f}] (L2 {:.1f}, L1 {:.1f}, "
                            "slack {:.0f}%)",
                            sd, lo, hi, report.sd_l2, report.sd_l1, 100.0 * options.sd_band_slack));
        }
    }
    return report;
}

CrossValidation cross_validate(const RegressionModel& model, const ObservationTable& data) {
    if (data.rows.empty()) {
        throw input_error("cross-validation table is empty");
    }
    if (!data.outcome_column) {
        throw input_error("cross-validation table has no outcome column");
    }
    const auto outcome_idx = data.column_index(*data.outcome_column);
    if (!outcome_idx) {
        throw input_error(fmt::format("outcome column '{}' not in table", *data.outcome_column));
    }
    std::vector<std::size_t> idx;
    for (const auto& p : model.predictors) {
        const auto i = data.column_index(p.name);
        if (!i) {
            throw input_error(fmt::format("table lacks predictor column '{}'", p.name));
        }
        idx.push_back(*i);
    }

    std::vector<double> truth;
    truth.reserve(data.rows.size());
    double rss = 0.0;
    for (const auto& row : data.rows) {
        double yhat = model.constant;
        for (std::size_t j = 0; j < idx.size(); ++j) {
            yhat += model.predictors[j].coefficient * row[idx[j]];
        }
        const double y = row[*outcome_idx];
        rss += (y - yhat) * (y - yhat);
        truth.push_back(y);
    }
    const double ybar = stats::mean(truth);
    double tss = 0.0;
    for (double y : truth) {
        tss += (y - ybar) * (y - ybar);
    }

    CrossValidation cv;
    cv.rows = data.rows.size();
    cv.mse = rss / static_cast<double>(cv.rows);
    if (tss > 0.0) {
        cv.r2_holdout = 1.0 - rss / tss;
    } else {
        cv.r2_holdout = rss == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
    }
    return cv;
}

ValidationReport validate_observations(const ObservationTable& data,
                                       const std::map<std::string, ValidationRule>& rules) {
    ValidationReport report;
    for (const auto& [name, rule] : rules) {
        const auto idx = data.column_index(name);
        if (!idx) {
            throw input_error(fmt::format("validation rule names unknown column '{}'", name));
        }
        const auto values = data.column(name);

        std::optional<std::pair<double, double>> band;
        if (rule.iqr_multiplier > 0.0 && !values.empty()) {
            std::vector<double> sorted = values;
            std::sort(sorted.begin(), sorted.end());
            const double med = stats::sorted_quantile(sorted, 0.5);
            const double iqr = stats::sorted_quantile(sorted, 0.75) - stats::sorted_quantile(sorted, 0.25);
            // a zero IQR carries no spread information; skip rather than flag every non-median value
            if (iqr > 0.0) {
                band = {med - rule.iqr_multiplier * iqr, med + rule.iqr_multiplier * iqr};
            }
        }

        for (std::size_t r = 0; r < values.size(); ++r) {
            const double v = values[r];
            if (rule.min && v < *rule.min) {
                report.violations.push_back({r, name, v, fmt::format("below minimum {}", *rule.min)});
            }
            if (rule.max && v > *rule.max) {
                report.violations.push_back({r, name, v, fmt::format("above maximum {}", *rule.max)});
            }
            if (band && (v < band->first || v > band->second)) {
                report.violations.push_back(
                    {r, name, v,
                     fmt::format("outside median ± {}·IQR [{:.4g}, {:.4g}]", rule.iqr_multiplier, band->first,
                                 band->second)});
            }
        }
    }
    return report;
}

} // namespace regaudit
