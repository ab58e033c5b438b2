#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace regaudit {

enum class Direction { higher_is_better, lower_is_better };

std::string to_string(Direction d);
Direction parse_direction(const std::string& text);

enum class Interpolation { monotone_cubic, linear };

struct PercentilePoint {
    double percentile = 0.0; // 0..100
    double score = 0.0;

    bool operator==(const PercentilePoint&) const = default;
};

/// Empirical quantile function given as a percentile table.
///
/// Percentiles must be strictly increasing from 0 to 100 and scores must be
/// non-decreasing. Tangents are computed once, at construction.
class QuantileProfile {
public:
    QuantileProfile(std::string label, std::vector<PercentilePoint> points,
                    Direction direction = Direction::higher_is_better,
                    Interpolation interpolation = Interpolation::monotone_cubic,
                    std::optional<int> sample_size = std::nullopt);

    const std::string& label() const { return label_; }
    const std::vector<PercentilePoint>& points() const { return points_; }
    Direction direction() const { return direction_; }
    Interpolation interpolation() const { return interpolation_; }
    /// Group size behind the table, used to pool SDs for Cohen's d.
    std::optional<int> sample_size() const { return sample_size_; }

    /// Q(u) for u in [0,1].
    double operator()(double u) const;

    /// Same table, different interpolant.
    QuantileProfile with_interpolation(Interpolation interpolation) const;

private:
    std::string label_;
    std::vector<PercentilePoint> points_;
    Direction direction_;
    Interpolation interpolation_;
    std::optional<int> sample_size_;
    std::vector<double> u_;       // percentile / 100
    std::vector<double> tangent_; // dQ/du at each knot
};

/// Throws input_error if u is outside [0,1].
double quantile_function(const QuantileProfile& profile, double u);

struct SampleSet {
    std::string label;
    std::vector<double> values;
    std::uint64_t seed = 0;
};

/// Uniform deviates in [0,1) from the top 53 bits of mt19937_64. The engine's
/// output is fixed by the standard; std::uniform_real_distribution is not.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

/// Inverse-transform Monte Carlo draws from the profile.
SampleSet sample(const QuantileProfile& profile, std::size_t n, std::uint64_t seed);

struct Moments {
    double mean = 0.0;
    double sd = 0.0;
};

/// Mean and SD of the reconstructed distribution, integrated exactly per segment.
Moments profile_moments(const QuantileProfile& profile);

inline constexpr std::size_t kDensityGridSize = 512;

struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;

    /// Linear interpolation on the grid; zero outside it.
    double value_at(double x) const;
    /// Trapezoidal integral over the grid.
    double integral() const;
};

/// 0.9·min(sd, IQR/1.34)·n^(-1/5); falls back to sd when the IQR is zero.
double silverman_bandwidth(const std::vector<double>& values);

/// Gaussian kernel density on a 512-point grid over [min-3h, max+3h].
DensityCurve density(const SampleSet& samples, std::optional<double> bandwidth = std::nullopt);

/// (mean1 - mean2) / s with s = sqrt((n1·s1² + n2·s2²)/(n1+n2)).
double cohen_d(double mean1, double sd1, double n1, double mean2, double sd2, double n2);

/// Φ(d/√2): probability a draw from group 1 exceeds a draw from group 2 under normality.
double cles_normal(double d);

/// Fraction of n paired draws in which `a` beats `b` in the shared direction; ties score one half.
double cles_mc(const QuantileProfile& a, const QuantileProfile& b, std::size_t n, std::uint64_t seed);

struct Odds {
    // unrounded; whichever side is smaller is exactly 1
    double numerator = 1.0;
    double denominator = 1.0;
    long rounded_numerator = 1;
    long rounded_denominator = 1;

    std::string label() const;
};

/// p:(1-p) normalised so the smaller side is 1.
Odds odds(double p);

struct EffectSizeReport {
    double d = 0.0;
    double cles = 0.5;
    Odds odds;
};

} // namespace regaudit
