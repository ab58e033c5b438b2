#pragma once

#include "regaudit/distributions.hpp"
#include "regaudit/io.hpp"
#include "regaudit/model.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testing {

inline std::filesystem::path asset(const std::string& relative) {
    return std::filesystem::path(REGAUDIT_TEST_ASSETS) / relative;
}

inline regaudit::RegressionModel bundled_model(const std::string& name) {
    return regaudit::io::load_model(asset("models/" + name + ".json"));
}

// Hand-rolled generators; every property test owns its seed.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    int integer(int lo, int hi) { // inclusive
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    bool coin(double p_true = 0.5) { return uniform(0.0, 1.0) < p_true; }
    double normal() {
        // Box-Muller, one deviate per call
        double u1 = uniform(0.0, 1.0);
        while (u1 <= 0.0) {
            u1 = uniform(0.0, 1.0);
        }
        const double u2 = uniform(0.0, 1.0);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    std::uint64_t seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

inline regaudit::RegressionModel random_model(Gen& g) {
    const int k = g.integer(1, 10);
    std::vector<regaudit::PredictorSummary> ps;
    for (int i = 0; i < k; ++i) {
        double coef = g.uniform(-10.0, 10.0);
        if (g.coin(0.1)) {
            coef = 0.0;
        }
        ps.push_back({"x" + std::to_string(i), coef, g.uniform(-100.0, 1000.0), g.uniform(0.0, 100.0)});
    }
    if (ps.front().coefficient == 0.0 || ps.front().sd == 0.0) {
        ps.front().coefficient = 1.5;
        ps.front().sd = 2.0;
    }
    return regaudit::make_model("random", g.uniform(-500.0, 500.0), ps);
}

inline std::vector<regaudit::PercentilePoint> random_points(Gen& g) {
    std::vector<double> pct{0.0};
    if (g.coin()) {
        pct = {0, 5, 10, 25, 50, 75, 90, 95, 100};
    } else {
        const int inner = g.integer(0, 12);
        std::vector<double> cuts;
        for (int i = 0; i < inner; ++i) {
            cuts.push_back(std::round(g.uniform(0.5, 99.5) * 10.0) / 10.0);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        pct.insert(pct.end(), cuts.begin(), cuts.end());
        pct.push_back(100.0);
    }
    std::vector<regaudit::PercentilePoint> pts;
    double score = g.uniform(-50.0, 500.0);
    for (double p : pct) {
        pts.push_back({p, score});
        // flat runs, tiny steps and big jumps all appear
        const double r = g.uniform(0.0, 1.0);
        score += r < 0.2 ? 0.0 : r < 0.3 ? 1e-6 : g.uniform(0.0, r < 0.9 ? 20.0 : 400.0);
    }
    return pts;
}

/// Percentile profile sampled from N(mean, sd) on a dense grid; the tails end at ±4 sd.
inline regaudit::QuantileProfile normal_profile(const std::string& label, double mean, double sd,
                                                regaudit::Direction direction = regaudit::Direction::higher_is_better,
                                                int n = 1000) {
    const boost::math::normal_distribution<double> dist(mean, sd);
    std::vector<double> pct{0.0, 0.1, 0.5, 1, 2.5, 5, 10, 15, 20, 25, 30, 35, 40, 45, 50,
                            55,  60,  65,  70, 75,  80, 85, 90, 95, 97.5, 99, 99.5, 99.9, 100};
    std::vector<regaudit::PercentilePoint> pts;
    for (double p : pct) {
        double score = 0.0;
        if (p == 0.0) {
            score = mean - 4.0 * sd;
        } else if (p == 100.0) {
            score = mean + 4.0 * sd;
        } else {
            score = boost::math::quantile(dist, p / 100.0);
        }
        pts.push_back({p, score});
    }
    return regaudit::QuantileProfile(label, pts, direction, regaudit::Interpolation::monotone_cubic, n);
}

} // namespace testing
