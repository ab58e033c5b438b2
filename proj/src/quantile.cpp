#include "regaudit/distributions.hpp"

#include "regaudit/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>

namespace regaudit {

std::string to_string(Direction d) {
    return d == Direction::higher_is_better ? "higher_is_better" : "lower_is_better";
}

Direction parse_direction(const std::string& text) {
    if (text == "higher_is_better") {
        return Direction::higher_is_better;
    }
    if (text == "lower_is_better") {
        return Direction::lower_is_better;
    }
    throw input_error(fmt::format("unknown direction '{}'", text));
}

namespace {

// Fritsch–Carlson: three-point initial tangents, zeroed on flat or
// extremal knots, then rescaled so each segment stays monotone.
std::vector<double> monotone_tangents(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> secant(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        secant[k] = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    }
    std::vector<double> m(n);
    m[0] = secant[0];
    m[n - 1] = secant[n - 2];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (secant[k - 1] * secant[k] <= 0.0) {
            m[k] = 0.0;
        } else {
            m[k] = 0.5 * (secant[k - 1] + secant[k]);
        }
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (secant[k] == 0.0) {
            m[k] = 0.0;
            m[k + 1] = 0.0;
        }
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (secant[k] == 0.0) {
            continue;
        }
        const double alpha = m[k] / secant[k];
        const double beta = m[k + 1] / secant[k];
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            m[k] = tau * alpha * secant[k];
            m[k + 1] = tau * beta * secant[k];
        }
    }
    return m;
}

} // namespace

QuantileProfile::QuantileProfile(std::string label, std::vector<PercentilePoint> points, Direction direction,
                                 Interpolation interpolation, std::optional<int> sample_size)
    : label_(std::move(label)),
      points_(std::move(points)),
      direction_(direction),
      interpolation_(interpolation),
      sample_size_(sample_size) {
    if (points_.size() < 2) {
        throw input_error(fmt::format("profile '{}' needs at least two percentile points", label_));
    }
    if (points_.front().percentile != 0.0 || points_.back().percentile != 100.0) {
        throw input_error(fmt::format("profile '{}' must start at percentile 0 and end at 100", label_));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].score) || !std::isfinite(points_[i].percentile)) {
            throw input_error(fmt::format("profile '{}' has a non-finite entry", label_));
        }
        if (i > 0) {
            if (!(points_[i].percentile > points_[i - 1].percentile)) {
                throw input_error(fmt::format("profile '{}': percentiles must be strictly increasing (at {})",
                                              label_, points_[i].percentile));
            }
            if (points_[i].score < points_[i - 1].score) {
                throw input_error(fmt::format("profile '{}': scores must be non-decreasing (at percentile {})",
                                              label_, points_[i].percentile));
            }
        }
    }
    if (sample_size_ && *sample_size_ < 1) {
        throw input_error(fmt::format("profile '{}': sample size must be positive", label_));
    }

    std::vector<double> y;
    for (const auto& pt : points_) {
        u_.push_back(pt.percentile / 100.0);
        y.push_back(pt.score);
    }
    if (interpolation_ == Interpolation::monotone_cubic) {
        tangent_ = monotone_tangents(u_, y);
    }
}

QuantileProfile QuantileProfile::with_interpolation(Interpolation interpolation) const {
    return QuantileProfile(label_, points_, direction_, interpolation, sample_size_);
}

double QuantileProfile::operator()(double u) const {
    // knot index k with u_[k] <= u <= u_[k+1]
    auto it = std::upper_bound(u_.begin(), u_.end(), u);
    std::size_t k = it == u_.begin() ? 0 : static_cast<std::size_t>(it - u_.begin()) - 1;
    k = std::min(k, u_.size() - 2);

    const double h = u_[k + 1] - u_[k];
    const double t = (u - u_[k]) / h;
    const double y0 = points_[k].score;
    const double y1 = points_[k + 1].score;
    if (t <= 0.0) {
        return y0;
    }
    if (t >= 1.0) {
        return y1;
    }
    if (interpolation_ == Interpolation::linear) {
        return y0 + t * (y1 - y0);
    }
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    const double v = h00 * y0 + h10 * h * tangent_[k] + h01 * y1 + h11 * h * tangent_[k + 1];
    // the Hermite form is monotone in exact arithmetic; keep rounding from leaking outside the segment
    return std::clamp(v, y0, y1);
}

double quantile_function(const QuantileProfile& profile, double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw input_error(fmt::format("quantile level {} outside [0,1]", u));
    }
    return profile(u);
}

SampleSet sample(const QuantileProfile& profile, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw input_error("sample size must be at least 1");
    }
    UniformStream stream(seed);
    SampleSet out{profile.label(), {}, seed};
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values.push_back(profile(stream.next()));
    }
    return out;
}

Moments profile_moments(const QuantileProfile& profile) {
    // 4-point Gauss–Legendre is exact through degree 7, enough for Q² of a cubic
    static constexpr std::array<double, 4> nodes{-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                                 0.8611363115940526};
    static constexpr std::array<double, 4> weights{0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                   0.3478548451374538};
    const auto& pts = profile.points();
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double a = pts[k].percentile / 100.0;
        const double b = pts[k + 1].percentile / 100.0;
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const double q = profile(mid + half * nodes[j]);
            m1 += weights[j] * half * q;
            m2 += weights[j] * half * q * q;
        }
    }
    return {m1, std::sqrt(std::max(0.0, m2 - m1 * m1))};
}

} // namespace regaudit
