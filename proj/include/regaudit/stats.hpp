#pragma once

#include <span>
#include <vector>

namespace regaudit::stats {

double mean(std::span<const double> xs);

/// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

/// Linearly interpolated quantile of already-sorted data (R type 7), q in [0,1].
double sorted_quantile(std::span<const double> sorted, double q);

/// Copies, sorts and returns the q-quantile.
double quantile(std::span<const double> xs, double q);

/// Standard normal CDF.
double normal_cdf(double x);

} // namespace regaudit::stats
