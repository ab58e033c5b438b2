#pragma once

#include "regaudit/model.hpp"

#include <array>

namespace regaudit {

/// Null-hypothesis setting for R²: n observations, k coefficients including the constant.
struct NullSpec {
    int n = 0;
    int k = 0;
    double r2 = 0.0;
};

/// Regularized incomplete beta I_x(a, b), absolute accuracy about 1e-14.
double incomplete_beta(double a, double b, double x);

/// P(R² ≥ r2) when all slopes are zero: R² ~ Beta((k-1)/2, (n-k)/2).
double r2_null_pvalue(const NullSpec& spec);

/// P(R² < r2) under the same null.
double r2_null_cdf(const NullSpec& spec);

/// Anscombe's quartet, columns {x, y} with y as outcome.
std::array<ObservationTable, 4> anscombe_sets();

struct AnscombeReport {
    std::array<OlsFit, 4> fits;
    std::array<double, 4> y_mean;
    std::array<double, 4> y_variance;
    double max_spread = 0.0; // largest pairwise difference across intercept/slope/r2
};

/// Fits all four sets and throws internal_error if they disagree by more than 0.01.
AnscombeReport anscombe_demo();

} // namespace regaudit
