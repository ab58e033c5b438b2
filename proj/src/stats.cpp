#include "regaudit/stats.hpp"

#include "regaudit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace regaudit::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) {
        throw input_error("mean of empty sample");
    }
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) {
        return 0.0;
    }
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - m) * (x - m);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double sorted_quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) {
        throw input_error("quantile of empty sample");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw input_error("quantile level outside [0,1]");
    }
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> xs, double q) {
    std::vector<double> copy(xs.begin(), xs.end());
    std::sort(copy.begin(), copy.end());
    return sorted_quantile(copy, q);
}

double normal_cdf(double x) {
    // erfc keeps full relative accuracy in the lower tail
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

} // namespace regaudit::stats
