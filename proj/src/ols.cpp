#include "regaudit/model.hpp"

#include "regaudit/errors.hpp"

#include <Eigen/Dense>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace regaudit {

namespace {

constexpr double kMaxCondition = 1e12;

} // namespace

OlsFit fit_ols(const ObservationTable& data, const std::string& outcome) {
    const auto y_idx = data.column_index(outcome);
    if (!y_idx) {
        throw input_error(fmt::format("outcome column '{}' not in table", outcome));
    }
    std::vector<std::size_t> x_idx;
    OlsFit fit;
    fit.terms.push_back("(intercept)");
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
        if (c != *y_idx) {
            x_idx.push_back(c);
            fit.terms.push_back(data.columns[c]);
        }
    }
    const auto n = static_cast<Eigen::Index>(data.rows.size());
    const auto k = static_cast<Eigen::Index>(x_idx.size() + 1);
    if (n < k) {
        throw input_error(fmt::format("{} rows cannot determine {} coefficients", n, k));
    }

    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd y(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& row = data.rows[static_cast<std::size_t>(r)];
        X(r, 0) = 1.0;
        for (Eigen::Index j = 1; j < k; ++j) {
            X(r, j) = row[x_idx[static_cast<std::size_t>(j - 1)]];
        }
        y(r) = row[*y_idx];
    }

    // Normal equations, equilibrated so the condition estimate is unit-free.
    Eigen::MatrixXd gram = X.transpose() * X;
    Eigen::VectorXd rhs = X.transpose() * y;
    Eigen::VectorXd scale = gram.diagonal().cwiseSqrt();
    if ((scale.array() == 0.0).any()) {
        throw singular_error("design matrix has an all-zero column");
    }
    Eigen::MatrixXd scaled = scale.cwiseInverse().asDiagonal() * gram * scale.cwiseInverse().asDiagonal();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = eig.eigenvalues().minCoeff();
    if (!(lmin > 0.0) || lmax / lmin > kMaxCondition) {
        throw singular_error(fmt::format("design matrix is rank deficient (condition estimate {:.3g})",
                                         lmin > 0.0 ? lmax / lmin : INFINITY));
    }

    Eigen::VectorXd z = scaled.colPivHouseholderQr().solve(scale.cwiseInverse().asDiagonal() * rhs);
    Eigen::VectorXd beta = scale.cwiseInverse().asDiagonal() * z;

    fit.coefficients.assign(beta.data(), beta.data() + beta.size());
    const Eigen::VectorXd resid = y - X * beta;
    fit.residual_sum_squares = resid.squaredNorm();
    const double tss = (y.array() - y.mean()).square().sum();
    if (tss > 0.0) {
        fit.r2 = std::clamp(1.0 - fit.residual_sum_squares / tss, 0.0, 1.0);
    } else {
        fit.r2 = 1.0;
    }
    return fit;
}

} // namespace regaudit
