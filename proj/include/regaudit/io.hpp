#pragma once

#include "regaudit/distributions.hpp"
#include "regaudit/errors.hpp"
#include "regaudit/importance.hpp"
#include "regaudit/model.hpp"
#include "regaudit/scoring.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace regaudit::io {

/// Thrown for malformed files; `where` names the file and, when known, the line or key.
class parse_error : public input_error {
public:
    parse_error(const std::string& where, const std::string& what);
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

std::string read_text(const std::filesystem::path& path);

// Model files (JSON):
//   { "label": "...", "constant": 329.6,
//     "predictors": [ {"name": "...", "coefficient": -7.19, "mean": 62.8, "sd": 15.2}, ... ],
//     "reported": {"mean": 842, "sd": 234, "r2": 0.423, "n": 339} }
RegressionModel parse_model(const std::string& text, const std::string& origin = "<model>");
RegressionModel load_model(const std::filesystem::path& path);
std::string model_to_json(const RegressionModel& model);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// RFC 4180-ish: comma separated, double-quoted fields, blank lines skipped.
CsvTable parse_csv(const std::string& text, const std::string& origin = "<csv>");
CsvTable load_csv(const std::filesystem::path& path);
std::string csv_escape(const std::string& field);

ObservationTable to_observations(const CsvTable& csv, std::optional<std::string> outcome,
                                 const std::string& origin = "<csv>");
ObservationTable load_observations(const std::filesystem::path& path, std::optional<std::string> outcome);

/// Square CSV; header names the predictors. An optional leading label column is allowed.
CovarianceMatrix to_covariance(const CsvTable& csv, const std::string& origin = "<csv>");
CovarianceMatrix load_covariance(const std::filesystem::path& path);

// Percentile files (JSON):
//   { "label": "run (men)", "direction": "lower_is_better", "n": 290,
//     "percentiles": [0, 5, 10, 25, 50, 75, 90, 95, 100], "scores": [...] }
QuantileProfile parse_profile(const std::string& text, const std::string& origin = "<profile>",
                              Interpolation interpolation = Interpolation::monotone_cubic);
QuantileProfile load_profile(const std::filesystem::path& path,
                             Interpolation interpolation = Interpolation::monotone_cubic);

/// "13:30" → 810; plain numbers pass through.
double parse_threshold(const std::string& text);

// Standards files (JSON):
//   { "events": [ {"name": "deadlift", "units": "lb", "direction": "higher_is_better",
//                  "anchors": [ {"points": 100, "threshold": 340}, ... ]}, ... ],
//     "tiers": {"gold": 60, "gray": 65, "black": 70} }
// Thresholds may be numbers or "m:ss" strings.
ScoringStandard parse_standard(const std::string& text, const std::string& origin = "<standard>");
ScoringStandard load_standard(const std::filesystem::path& path);

/// Columns named "group:<label>" are categorical; every other column is a numeric event score.
Cohort to_cohort(const CsvTable& csv, const std::string& origin = "<csv>");
Cohort load_cohort(const std::filesystem::path& path);

struct RateSeries {
    std::string period;
    std::map<std::string, double> rates;
};

// Rate files (JSON): { "label": "...", "rates": {"female": 0.32, "male": 0.89},
//                      "series": [ {"period": "FY19", "rates": {...}}, ... ] }   series optional
struct RateFile {
    std::string label;
    std::map<std::string, double> rates;
    std::vector<RateSeries> series;
};
RateFile parse_rates(const std::string& text, const std::string& origin = "<rates>");
RateFile load_rates(const std::filesystem::path& path);

// Count files (JSON):
//   { "label": "...", "baseline": "APFT", "comparison": "ACFT",
//     "counts": { "ACFT": {"male": {"pass": 98, "fail": 3}, ...}, "APFT": {...} } }
struct PassFail {
    long pass = 0;
    long fail = 0;
};
struct CountFile {
    std::string label;
    std::string baseline;
    std::string comparison;
    std::map<std::string, std::map<std::string, PassFail>> counts; // test -> group -> counts
};
CountFile parse_counts(const std::string& text, const std::string& origin = "<counts>");
CountFile load_counts(const std::filesystem::path& path);

} // namespace regaudit::io
