#include "regaudit/diagnostics.hpp"

#include "regaudit/errors.hpp"
#include "regaudit/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace regaudit {

namespace {

void validate(const NullSpec& spec) {
    if (spec.k < 2) {
        throw input_error(fmt::format("k={} must count the constant and at least one slope", spec.k));
    }
    if (spec.n <= spec.k) {
        throw input_error(fmt::format("n={} must exceed k={}", spec.n, spec.k));
    }
    if (!(spec.r2 >= 0.0 && spec.r2 <= 1.0)) {
        throw input_error(fmt::format("r2={} outside [0,1]", spec.r2));
    }
}

} // namespace

double r2_null_pvalue(const NullSpec& spec) {
    validate(spec);
    const double a = 0.5 * (spec.k - 1);
    const double b = 0.5 * (spec.n - spec.k);
    // upper tail by symmetry, I_{1-x}(b, a), avoids cancellation near p = 0
    return incomplete_beta(b, a, 1.0 - spec.r2);
}

double r2_null_cdf(const NullSpec& spec) {
    validate(spec);
    return incomplete_beta(0.5 * (spec.k - 1), 0.5 * (spec.n - spec.k), spec.r2);
}

std::array<ObservationTable, 4> anscombe_sets() {
    static const std::array<std::array<std::pair<double, double>, 11>, 4> points{{
        {{{10.00, 8.04}, {8.00, 6.95}, {13.00, 7.58}, {9.00, 8.81}, {11.00, 8.33}, {14.00, 9.96}, {6.00, 7.24},
          {4.00, 4.26}, {12.00, 10.84}, {7.00, 4.82}, {5.00, 5.68}}},
        {{{10.00, 9.14}, {8.00, 8.14}, {13.00, 8.74}, {9.00, 8.77}, {11.00, 9.26}, {14.00, 8.10}, {6.00, 6.13},
          {4.00, 3.10}, {12.00, 9.13}, {7.00, 7.26}, {5.00, 4.74}}},
        {{{10.00, 7.46}, {8.00, 6.77}, {13.00, 12.74}, {9.00, 7.11}, {11.00, 7.81}, {14.00, 8.84}, {6.00, 6.08},
          {4.00, 5.39}, {12.00, 8.15}, {7.00, 6.42}, {5.00, 5.73}}},
        {{{8.00, 6.58}, {8.00, 5.76}, {8.00, 7.71}, {8.00, 8.84}, {8.00, 8.47}, {8.00, 7.04}, {8.00, 5.25},
          {19.00, 12.50}, {8.00, 5.56}, {8.00, 7.91}, {8.00, 6.89}}},
    }};
    std::array<ObservationTable, 4> sets;
    for (std::size_t s = 0; s < 4; ++s) {
        std::vector<std::vector<double>> rows;
        for (const auto& [x, y] : points[s]) {
            rows.push_back({x, y});
        }
        sets[s] = make_table({"x", "y"}, std::move(rows), "y");
    }
    return sets;
}

AnscombeReport anscombe_demo() {
    const auto sets = anscombe_sets();
    AnscombeReport report;
    for (std::size_t s = 0; s < 4; ++s) {
        report.fits[s] = fit_ols(sets[s], "y");
        const auto y = sets[s].column("y");
        report.y_mean[s] = stats::mean(y);
        const double sd = stats::sample_sd(y);
        report.y_variance[s] = sd * sd;
    }
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
            const auto& a = report.fits[i];
            const auto& b = report.fits[j];
            report.max_spread = std::max({report.max_spread, std::abs(a.coefficients[0] - b.coefficients[0]),
                                          std::abs(a.coefficients[1] - b.coefficients[1]), std::abs(a.r2 - b.r2)});
        }
    }
    if (report.max_spread > 0.01) {
        throw internal_error(fmt::format("Anscombe fits disagree by {:.4f}", report.max_spread));
    }
    return report;
}

} // namespace regaudit
