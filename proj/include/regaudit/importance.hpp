#pragma once

#include "regaudit/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace regaudit {

/// (name, share) in predictor order.
using Shares = std::vector<std::pair<std::string, double>>;

struct ImportanceRow {
    std::string name;
    double share_lower = 0.0;
    double share_point = 0.0;
    double share_upper = 0.0;
    bool negative_coefficient = false;
};

/// Relative-importance bracket. The ends come from the fully correlated
/// (p = 1) and uncorrelated (p = 2) extremes; the point estimate from p_point.
struct ImportanceReport {
    std::vector<ImportanceRow> rows;
    double p_point = 1.3;
};

/// Symmetric covariance of predictor values, indexed by name.
class CovarianceMatrix {
public:
    /// Throws input_error unless square, symmetric to 1e-9, with a nonnegative diagonal.
    CovarianceMatrix(std::vector<std::string> names, std::vector<std::vector<double>> entries);

    const std::vector<std::string>& names() const { return names_; }
    double at(std::size_t i, std::size_t j) const { return entries_[i][j]; }
    std::size_t size() const { return names_.size(); }
    /// Pearson correlation between two entries.
    double correlation(std::size_t i, std::size_t j) const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<double>> entries_;
};

/// |a_i σ_i|^p / Σ_j |a_j σ_j|^p for 1 ≤ p ≤ 2.
Shares ri(const RegressionModel& model, double p);

ImportanceReport ri_bounds(const RegressionModel& model, double p_point = 1.3);

/// Grid search (step 0.01 over [1,2], ties to the smaller p) for the p whose
/// weighted L^p aggregate of |a_i σ_i| best matches sqrt(R²)·SD_Y.
double calibrate_p(const RegressionModel& model);

/// (Σ |a_i σ_i|^p)^(1/p).
double lp_aggregate(const RegressionModel& model, double p);

/// Var(Σ a_i X_i) = Σ_ij a_i a_j Cov(X_i, X_j).
double explained_variance(const RegressionModel& model, const CovarianceMatrix& cov);

/// Replaces `sources` with one z-score composite predictor, placed where the
/// first source stood: σ* = sqrt(Σσ_i²), μ* = Σσ_iμ_i / σ*.
RegressionModel zfold(const RegressionModel& model, const std::vector<std::string>& sources,
                      const std::string& name, double coefficient);

/// σ_i^p / Σ σ_j^p.
Shares weight_shares(const std::vector<std::pair<std::string, double>>& sds, double p);

} // namespace regaudit
