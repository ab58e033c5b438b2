#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace regaudit {

/// One regression term: the conversion factor from predictor units to
/// outcome units, plus the predictor's sample mean and SD.
struct PredictorSummary {
    std::string name;
    double coefficient = 0.0;
    double mean = 0.0;
    double sd = 0.0;

    bool operator==(const PredictorSummary&) const = default;
};

/// Summary statistics the publisher reported for the outcome variable.
struct ReportedOutcome {
    std::optional<double> mean;
    std::optional<double> sd;
    std::optional<double> r2;
    std::optional<int> n;

    bool operator==(const ReportedOutcome&) const = default;
};

/// A published linear model known only through its summary table.
///
/// Construct through make_model() (or parse_model()) so the invariants hold:
/// at least one predictor, unique names, nonnegative SDs, R² in [0,1], and
/// n larger than the number of coefficients when n is present.
struct RegressionModel {
    std::string label;
    double constant = 0.0;
    std::vector<PredictorSummary> predictors;
    ReportedOutcome reported;

    /// Index of the named predictor, or nullopt.
    std::optional<std::size_t> find(const std::string& name) const;

    bool operator==(const RegressionModel&) const = default;
};

/// Validates and returns the model; throws input_error naming the broken invariant.
RegressionModel make_model(std::string label, double constant, std::vector<PredictorSummary> predictors,
                           ReportedOutcome reported = {});

/// Rows of numeric observations with named columns.
struct ObservationTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::optional<std::string> outcome_column;

    std::optional<std::size_t> column_index(const std::string& name) const;
    /// Copy of one column; throws input_error if absent.
    std::vector<double> column(const std::string& name) const;
};

ObservationTable make_table(std::vector<std::string> columns, std::vector<std::vector<double>> rows,
                            std::optional<std::string> outcome_column = std::nullopt);

struct OlsFit {
    std::vector<std::string> terms;   // "(intercept)" then predictor names
    std::vector<double> coefficients; // intercept first
    double r2 = 0.0;
    double residual_sum_squares = 0.0;
};

struct ConsistencyOptions {
    double mean_relative_tolerance = 0.05;
    double sd_band_slack = 0.20;
};

struct ConsistencyReport {
    double predicted_mean = 0.0;
    std::optional<double> reported_mean;
    std::optional<double> mean_abs_dev;
    double sd_l1 = 0.0;
    double sd_l2 = 0.0;
    std::optional<double> reported_sd;
    std::vector<std::string> flags;

    bool flagged() const { return !flags.empty(); }
};

struct CrossValidation {
    double mse = 0.0;
    double r2_holdout = 0.0;
    std::size_t rows = 0;
};

struct ValidationRule {
    std::optional<double> min;
    std::optional<double> max;
    double iqr_multiplier = 3.0;
};

struct Violation {
    std::size_t row = 0;
    std::string column;
    double value = 0.0;
    std::string rule;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool clean() const { return violations.empty(); }
};

/// constant + Σ coefficient·value. Every predictor must be supplied exactly once.
double predict(const RegressionModel& model, const std::map<std::string, double>& values);

/// Prediction at the predictor means.
double predict_at_means(const RegressionModel& model);

ConsistencyReport consistency_check(const RegressionModel& model, const ConsistencyOptions& options = {});

/// Least squares with an intercept, regressing `outcome` on every other column.
OlsFit fit_ols(const ObservationTable& data, const std::string& outcome);

/// Scores a fixed model against held-out rows; data.outcome_column names the truth.
CrossValidation cross_validate(const RegressionModel& model, const ObservationTable& data);

ValidationReport validate_observations(const ObservationTable& data,
                                       const std::map<std::string, ValidationRule>& rules);

} // namespace regaudit
