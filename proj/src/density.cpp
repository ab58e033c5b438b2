#include "regaudit/distributions.hpp"

#include "regaudit/errors.hpp"
#include "regaudit/stats.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace regaudit {

double DensityCurve::value_at(double x) const {
    if (grid.empty() || x < grid.front() || x > grid.back()) {
        return 0.0;
    }
    auto it = std::upper_bound(grid.begin(), grid.end(), x);
    if (it == grid.end()) {
        return density.back();
    }
    const auto hi = static_cast<std::size_t>(it - grid.begin());
    const auto lo = hi - 1;
    const double t = (x - grid[lo]) / (grid[hi] - grid[lo]);
    return density[lo] + t * (density[hi] - density[lo]);
}

double DensityCurve::integral() const {
    double total = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        total += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
    }
    return total;
}

double silverman_bandwidth(const std::vector<double>& values) {
    if (values.size() < 2) {
        throw degenerate_error("bandwidth rule needs at least two samples");
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const double sd = stats::sample_sd(sorted);
    const double iqr = stats::sorted_quantile(sorted, 0.75) - stats::sorted_quantile(sorted, 0.25);
    double spread = std::min(sd, iqr / 1.34);
    if (spread <= 0.0) {
        spread = sd;
    }
    if (spread <= 0.0) {
        throw degenerate_error("all samples identical; supply an explicit bandwidth");
    }
    return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

DensityCurve density(const SampleSet& samples, std::optional<double> bandwidth) {
    if (samples.values.empty()) {
        throw input_error("density of an empty sample set");
    }
    double h = 0.0;
    if (bandwidth) {
        if (!(*bandwidth > 0.0) || !std::isfinite(*bandwidth)) {
            throw input_error(fmt::format("bandwidth must be positive, got {}", *bandwidth));
        }
        h = *bandwidth;
    } else {
        h = silverman_bandwidth(samples.values);
    }

    const auto [lo_it, hi_it] = std::minmax_element(samples.values.begin(), samples.values.end());
    const double lo = *lo_it - 3.0 * h;
    const double hi = *hi_it + 3.0 * h;

    DensityCurve curve;
    curve.bandwidth = h;
    curve.grid.resize(kDensityGridSize);
    curve.density.assign(kDensityGridSize, 0.0);
    const double step = (hi - lo) / static_cast<double>(kDensityGridSize - 1);
    for (std::size_t i = 0; i < kDensityGridSize; ++i) {
        curve.grid[i] = lo + step * static_cast<double>(i);
    }
    curve.grid.back() = hi;

    const double norm = 1.0 / (static_cast<double>(samples.values.size()) * h * std::sqrt(2.0 * std::numbers::pi));
    for (std::size_t i = 0; i < kDensityGridSize; ++i) {
        const double x = curve.grid[i];
        double acc = 0.0;
        for (double v : samples.values) {
            const double z = (x - v) / h;
            acc += std::exp(-0.5 * z * z);
        }
        curve.density[i] = acc * norm;
    }
    return curve;
}

} // namespace regaudit
