#include "regaudit/distributions.hpp"

#include "regaudit/errors.hpp"
#include "regaudit/stats.hpp"

#include <fmt/format.h>

#include <cmath>

namespace regaudit {

double cohen_d(double mean1, double sd1, double n1, double mean2, double sd2, double n2) {
    if (sd1 < 0.0 || sd2 < 0.0) {
        throw input_error("standard deviations must be nonnegative");
    }
    if (n1 < 1.0 || n2 < 1.0) {
        throw input_error("group sizes must be at least 1");
    }
    const double pooled = std::sqrt((n1 * sd1 * sd1 + n2 * sd2 * sd2) / (n1 + n2));
    if (!(pooled > 0.0)) {
        throw degenerate_error("pooled standard deviation is zero");
    }
    return (mean1 - mean2) / pooled;
}

double cles_normal(double d) {
    return stats::normal_cdf(d / std::sqrt(2.0));
}

double cles_mc(const QuantileProfile& a, const QuantileProfile& b, std::size_t n, std::uint64_t seed) {
    if (a.direction() != b.direction()) {
        throw input_error(fmt::format("profiles '{}' and '{}' disagree on direction", a.label(), b.label()));
    }
    if (n == 0) {
        throw input_error("sample size must be at least 1");
    }
    const bool higher = a.direction() == Direction::higher_is_better;
    UniformStream stream(seed);
    double wins = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xa = a(stream.next());
        const double xb = b(stream.next());
        if (xa == xb) {
            wins += 0.5;
        } else if ((xa > xb) == higher) {
            wins += 1.0;
        }
    }
    return wins / static_cast<double>(n);
}

Odds odds(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw degenerate_error(fmt::format("odds undefined for probability {}", p));
    }
    Odds o;
    if (p >= 0.5) {
        o.numerator = p / (1.0 - p);
        o.denominator = 1.0;
        o.rounded_numerator = std::lround(o.numerator);
        o.rounded_denominator = 1;
    } else {
        o.numerator = 1.0;
        o.denominator = (1.0 - p) / p;
        o.rounded_numerator = 1;
        o.rounded_denominator = std::lround(o.denominator);
    }
    return o;
}

std::string Odds::label() const {
    return fmt::format("{}:{}", rounded_numerator, rounded_denominator);
}

} // namespace regaudit
