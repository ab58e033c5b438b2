#include "support.hpp"

#include "regaudit/diagnostics.hpp"
#include "regaudit/errors.hpp"
#include "regaudit/stats.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include <doctest.h>

#include <cmath>

using namespace regaudit;
using doctest::Approx;

namespace {

// P(R² ≥ r2) by integrating the Beta((k-1)/2, (n-k)/2) density
double quadrature_pvalue(int n, int k, double r2) {
    const double a = 0.5 * (k - 1), b = 0.5 * (n - k);
    const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    auto pdf = [&](double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        return std::exp(log_norm + (a - 1) * std::log(x) + (b - 1) * std::log1p(-x));
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    if (r2 >= 1.0) return 0.0;
    return integrator.integrate(pdf, r2, 1.0);
}

} // namespace

TEST_CASE("null p-value for n=300, k=6, R²=0.07") {
    const double p = r2_null_pvalue({300, 6, 0.07});
    CHECK(p < 1e-3);
    CHECK(std::abs(p - quadrature_pvalue(300, 6, 0.07)) < 1e-8);
}

TEST_CASE("null p-value endpoints") {
    CHECK(r2_null_pvalue({50, 4, 0.0}) == Approx(1.0).epsilon(1e-14));
    CHECK(r2_null_pvalue({50, 4, 1.0}) == Approx(0.0).epsilon(1e-14));
}

TEST_CASE("null p-value matches quadrature for n=20, k=3, R²=0.3") {
    CHECK(std::abs(r2_null_pvalue({20, 3, 0.3}) - quadrature_pvalue(20, 3, 0.3)) < 1e-8);
}

TEST_CASE("incomplete beta agrees with Boost's ibeta") {
    testing::Gen g(8);
    for (int i = 0; i < 200; ++i) {
        const double a = g.uniform(0.2, 200.0), b = g.uniform(0.2, 200.0), x = g.uniform(0.0, 1.0);
        CHECK(std::abs(incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)) < 1e-10);
    }
    CHECK(incomplete_beta(2, 3, 0.0) == 0.0);
    CHECK(incomplete_beta(2, 3, 1.0) == 1.0);
    CHECK_THROWS_AS(incomplete_beta(0, 3, 0.5), input_error);
    CHECK_THROWS_AS(incomplete_beta(1, 3, 1.5), input_error);
}

TEST_CASE("p-value and cdf are complementary") {
    testing::Gen g(9);
    for (int i = 0; i < 100; ++i) {
        const int k = g.integer(2, 12);
        const int n = k + g.integer(1, 500);
        const NullSpec s{n, k, g.uniform(0, 1)};
        CHECK(std::abs(r2_null_pvalue(s) + r2_null_cdf(s) - 1.0) < 1e-10);
    }
}

TEST_CASE("null p-value is decreasing in R² and in n") {
    double prev = 2.0;
    for (double r2 = 0.0; r2 <= 0.3; r2 += 0.01) {
        const double p = r2_null_pvalue({100, 5, r2});
        CHECK(p < prev);
        prev = p;
    }
    prev = 2.0;
    for (int n = 10; n <= 400; n += 10) {
        const double p = r2_null_pvalue({n, 5, 0.1});
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("null mean is (k-1)/(n-1)") {
    // E[X] = ∫ P(X > x) dx
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double mean = integrator.integrate([](double x) { return r2_null_pvalue({300, 6, x}); }, 0.0, 1.0);
    CHECK(mean == Approx(5.0 / 299.0).epsilon(1e-8));
    CHECK(5.0 / 299.0 == Approx(0.0167).epsilon(1e-3));
}

TEST_CASE("NullSpec validation") {
    CHECK_THROWS_AS(r2_null_pvalue({10, 1, 0.5}), input_error);
    CHECK_THROWS_AS(r2_null_pvalue({5, 5, 0.5}), input_error);
    CHECK_THROWS_AS(r2_null_pvalue({10, 3, -0.1}), input_error);
    CHECK_THROWS_AS(r2_null_pvalue({10, 3, 1.1}), input_error);
}

TEST_CASE("Anscombe sets as printed") {
    const auto sets = anscombe_sets();
    CHECK(sets[0].rows.front() == std::vector<double>{10.00, 8.04});
    for (const auto& s : sets) {
        CHECK(s.rows.size() == 11);
        CHECK(stats::mean(s.column("x")) == Approx(9.0).epsilon(1e-3));
        CHECK(s.outcome_column == std::optional<std::string>("y"));
    }
}

TEST_CASE("Anscombe sets match the bundled CSVs") {
    const auto sets = anscombe_sets();
    for (std::size_t i = 0; i < 4; ++i) {
        const auto t = io::load_observations(testing::asset("anscombe/set" + std::to_string(i + 1) + ".csv"), "y");
        CHECK(t.rows == sets[i].rows);
    }
}

TEST_CASE("Anscombe demo: one line, four data sets") {
    const auto r = anscombe_demo();
    CHECK(r.max_spread <= 0.01);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(r.fits[i].r2 - 0.666) <= 0.005);
        CHECK(std::abs(r.fits[i].coefficients[1] - 0.500) <= 0.003);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(std::abs(r.y_mean[i] - r.y_mean[j]) <= 0.01);
            CHECK(std::abs(r.y_variance[i] - r.y_variance[j]) <= 0.01);
        }
    }
}
