#include "regaudit/importance.hpp"

#include "regaudit/errors.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace regaudit {

namespace {

void require_p(double p) {
    if (!(p >= 1.0 && p <= 2.0)) {
        throw input_error(fmt::format("importance exponent p={} outside [1,2]", p));
    }
}

std::vector<std::pair<std::string, double>> effects(const RegressionModel& model) {
    std::vector<std::pair<std::string, double>> out;
    out.reserve(model.predictors.size());
    for (const auto& pr : model.predictors) {
        out.emplace_back(pr.name, std::abs(pr.coefficient * pr.sd));
    }
    return out;
}

} // namespace

CovarianceMatrix::CovarianceMatrix(std::vector<std::string> names, std::vector<std::vector<double>> entries)
    : names_(std::move(names)), entries_(std::move(entries)) {
    const auto n = names_.size();
    if (entries_.size() != n) {
        throw input_error(fmt::format("covariance has {} rows for {} names", entries_.size(), n));
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (!seen.insert(name).second) {
            throw input_error(fmt::format("covariance repeats name '{}'", name));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (entries_[i].size() != n) {
            throw input_error(fmt::format("covariance row {} has {} entries, expected {}", i, entries_[i].size(), n));
        }
        if (entries_[i][i] < 0.0) {
            throw input_error(fmt::format("covariance diagonal for '{}' is negative", names_[i]));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double a = entries_[i][j];
            const double b = entries_[j][i];
            const double tol = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
            if (std::abs(a - b) > tol) {
                throw input_error(
                    fmt::format("covariance not symmetric at ('{}','{}'): {} vs {}", names_[i], names_[j], a, b));
            }
        }
    }
}

double CovarianceMatrix::correlation(std::size_t i, std::size_t j) const {
    const double denom = std::sqrt(entries_[i][i] * entries_[j][j]);
    if (denom == 0.0) {
        throw degenerate_error("correlation undefined for a zero-variance predictor");
    }
    return entries_[i][j] / denom;
}

Shares weight_shares(const std::vector<std::pair<std::string, double>>& sds, double p) {
    require_p(p);
    if (sds.empty()) {
        throw input_error("no weights supplied");
    }
    double total = 0.0;
    for (const auto& [name, sd] : sds) {
        if (!(sd >= 0.0) || !std::isfinite(sd)) {
            throw input_error(fmt::format("weight for '{}' must be a nonnegative number", name));
        }
        total += std::pow(sd, p);
    }
    if (total == 0.0) {
        throw degenerate_error("all weights are zero; shares undefined");
    }
    Shares out;
    out.reserve(sds.size());
    for (const auto& [name, sd] : sds) {
        out.emplace_back(name, std::pow(sd, p) / total);
    }
    return out;
}

Shares ri(const RegressionModel& model, double p) {
    require_p(p);
    try {
        return weight_shares(effects(model), p);
    } catch (const degenerate_error&) {
        throw degenerate_error(fmt::format("model '{}' has every |coefficient·sd| equal to zero", model.label));
    }
}

ImportanceReport ri_bounds(const RegressionModel& model, double p_point) {
    require_p(p_point);
    const auto l1 = ri(model, 1.0);
    const auto l2 = ri(model, 2.0);
    const auto mid = ri(model, p_point);

    ImportanceReport report;
    report.p_point = p_point;
    for (std::size_t i = 0; i < model.predictors.size(); ++i) {
        ImportanceRow row;
        row.name = model.predictors[i].name;
        row.share_lower = std::min(l1[i].second, l2[i].second);
        row.share_upper = std::max(l1[i].second, l2[i].second);
        row.share_point = mid[i].second;
        row.negative_coefficient = model.predictors[i].coefficient < 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

double lp_aggregate(const RegressionModel& model, double p) {
    require_p(p);
    double total = 0.0;
    for (const auto& [name, t] : effects(model)) {
        total += std::pow(t, p);
    }
    return std::pow(total, 1.0 / p);
}

double calibrate_p(const RegressionModel& model) {
    if (!model.reported.r2 || !model.reported.sd) {
        throw input_error(fmt::format("model '{}' needs reported r2 and sd to calibrate p", model.label));
    }
    const double target = std::sqrt(*model.reported.r2) * *model.reported.sd;
    double best_p = 1.0;
    double best_gap = std::abs(lp_aggregate(model, 1.0) - target);
    for (int step = 1; step <= 100; ++step) {
        const double p = 1.0 + step / 100.0;
        const double gap = std::abs(lp_aggregate(model, p) - target);
        if (gap < best_gap) {
            best_gap = gap;
            best_p = p;
        }
    }
    return best_p;
}

double explained_variance(const RegressionModel& model, const CovarianceMatrix& cov) {
    if (cov.size() != model.predictors.size()) {
        throw input_error(fmt::format("covariance covers {} predictors, model '{}' has {}", cov.size(), model.label,
                                      model.predictors.size()));
    }
    const auto n = static_cast<Eigen::Index>(cov.size());
    Eigen::VectorXd a(n);
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& name = cov.names()[static_cast<std::size_t>(i)];
        const auto idx = model.find(name);
        if (!idx) {
            throw input_error(fmt::format("covariance names '{}', which is not a predictor of '{}'", name, model.label));
        }
        a(i) = model.predictors[*idx].coefficient;
        for (Eigen::Index j = 0; j < n; ++j) {
            c(i, j) = cov.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(c, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    if (eig.eigenvalues().minCoeff() < -1e-9 * scale) {
        throw input_error("covariance matrix is not positive semidefinite");
    }
    return a.dot(c * a);
}

RegressionModel zfold(const RegressionModel& model, const std::vector<std::string>& sources,
                      const std::string& name, double coefficient) {
    if (sources.empty()) {
        throw input_error("zfold needs at least one source predictor");
    }
    std::set<std::string> wanted;
    for (const auto& s : sources) {
        if (!model.find(s)) {
            throw input_error(fmt::format("'{}' is not a predictor of model '{}'", s, model.label));
        }
        if (!wanted.insert(s).second) {
            throw input_error(fmt::format("source '{}' listed twice", s));
        }
    }

    double var_sum = 0.0;
    double weighted_mean = 0.0;
    for (const auto& s : sources) {
        const auto& pr = model.predictors[*model.find(s)];
        var_sum += pr.sd * pr.sd;
        weighted_mean += pr.sd * pr.mean;
    }
    const double sigma_star = std::sqrt(var_sum);
    if (sigma_star == 0.0) {
        throw degenerate_error("cannot fold predictors that all have zero sd");
    }
    PredictorSummary folded{name, coefficient, weighted_mean / sigma_star, sigma_star};

    std::vector<PredictorSummary> kept;
    bool placed = false;
    for (const auto& pr : model.predictors) {
        if (wanted.contains(pr.name)) {
            if (!placed) {
                kept.push_back(folded);
                placed = true;
            }
            continue;
        }
        kept.push_back(pr);
    }
    return make_model(model.label, model.constant, std::move(kept), model.reported);
}

} // namespace regaudit
