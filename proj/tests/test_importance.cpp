#include "support.hpp"

#include "regaudit/errors.hpp"
#include "regaudit/importance.hpp"
#include "regaudit/model.hpp"

#include <doctest.h>

#include <cmath>

using namespace regaudit;
using doctest::Approx;

namespace {

double share(const Shares& s, const std::string& name) {
    for (const auto& [n, v] : s) {
        if (n == name) return v;
    }
    FAIL("no share for " << name);
    return 0.0;
}

const ImportanceRow& row(const ImportanceReport& r, const std::string& name) {
    for (const auto& x : r.rows) {
        if (x.name == name) return x;
    }
    throw std::runtime_error("no row " + name);
}

double hand_share(const RegressionModel& m, const std::string& name, double p) {
    double total = 0.0, mine = 0.0;
    for (const auto& q : m.predictors) {
        const double t = std::pow(std::abs(q.coefficient * q.sd), p);
        total += t;
        if (q.name == name) mine = t;
    }
    return mine / total;
}

} // namespace

TEST_CASE("Riley seven-event shares at p=1") {
    const auto m = testing::bundled_model("riley7");
    const auto s = ri(m, 1.0);
    CHECK(share(s, "sled-drag") == Approx(hand_share(m, "sled-drag", 1.0)).epsilon(1e-12));
    CHECK(share(s, "sled-drag") == Approx(0.339).epsilon(0.003));
    CHECK(share(s, "squat") == Approx(0.084).epsilon(0.01));
    CHECK(std::abs(share(s, "sled-drag") / share(s, "squat") - 4.0) <= 0.3);
}

TEST_CASE("equal |a·sd| gives uniform shares") {
    const auto m = make_model("u", 0.0, {{"a", 2.0, 0, 3.0}, {"b", -3.0, 0, 2.0}, {"c", 6.0, 0, 1.0}});
    for (double p : {1.0, 1.3, 2.0}) {
        for (const auto& [n, v] : ri(m, p)) {
            CHECK(v == Approx(1.0 / 3.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("Benning eight-event: leg tuck and push-ups are negligible") {
    const auto m = testing::bundled_model("benning8");
    const auto s = ri(m, 1.3);
    CHECK(share(s, "leg-tuck") + share(s, "push-ups") < 0.01);
    CHECK(share(ri(m, 2.0), "run") > 0.99);
}

TEST_CASE("ri error paths") {
    const auto zero = make_model("z", 1.0, {{"a", 0.0, 1, 2}, {"b", 3.0, 1, 0}});
    CHECK_THROWS_AS(ri(zero, 1.0), degenerate_error);
    const auto m = testing::bundled_model("apft");
    CHECK_THROWS_AS(ri(m, 0.99), input_error);
    CHECK_THROWS_AS(ri(m, 2.01), input_error);
    CHECK_THROWS_AS(ri_bounds(m, 3.0), input_error);
}

TEST_CASE("ri_bounds brackets and orders") {
    const auto r8 = ri_bounds(testing::bundled_model("riley8"));
    CHECK(r8.p_point == 1.3);
    CHECK(row(r8, "leg-tuck").share_point < 0.05);
    CHECK(row(r8, "shuttle-run").share_point < 0.05);
    for (const auto& x : r8.rows) {
        CHECK(x.share_lower <= x.share_point);
        CHECK(x.share_point <= x.share_upper);
    }
    CHECK(row(r8, "deadlift").negative_coefficient);
    CHECK_FALSE(row(r8, "sled-drag").negative_coefficient);

    const auto single = ri_bounds(make_model("s", 0, {{"a", -2.0, 1, 4}}));
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0].share_lower == 1.0);
    CHECK(single.rows[0].share_point == 1.0);
    CHECK(single.rows[0].share_upper == 1.0);
}

TEST_CASE("calibrate_p on exact L1 and L2 matches") {
    // |a·sd| = 3 and 4: L1 = 7, L2 = 5
    auto m = make_model("c", 0, {{"a", 1.0, 0, 3.0}, {"b", 2.0, 0, 2.0}});
    m.reported.r2 = 0.25;
    m.reported.sd = 10.0; // target sqrt(0.25)·10 = 5
    CHECK(calibrate_p(m) == 2.0);
    m.reported.sd = 14.0; // target 7
    CHECK(calibrate_p(m) == 1.0);
}

TEST_CASE("calibrate_p on the Riley eight-event model") {
    // grid oracle: (Σ|a·sd|^p)^(1/p) closest to sqrt(0.737)·234 = 200.89
    const auto m = testing::bundled_model("riley8");
    const double target = std::sqrt(0.737) * 234.0;
    double best = 1.0, gap = 1e300;
    for (int i = 0; i <= 100; ++i) {
        const double p = 1.0 + i / 100.0;
        double s = 0.0;
        for (const auto& q : m.predictors) {
            s += std::pow(std::abs(q.coefficient * q.sd), p);
        }
        const double g = std::abs(std::pow(s, 1.0 / p) - target);
        if (g < gap) {
            gap = g;
            best = p;
        }
    }
    CHECK(calibrate_p(m) == Approx(best).epsilon(1e-12));
    CHECK(calibrate_p(m) == Approx(1.09).epsilon(1e-9));
}

TEST_CASE("calibrate_p needs reported r2 and sd") {
    CHECK_THROWS_AS(calibrate_p(make_model("m", 0, {{"a", 1, 0, 1}})), input_error);
}

TEST_CASE("explained variance: diagonal and rank-one cases") {
    const auto m = make_model("m", 0, {{"a", 2.0, 0, 3.0}, {"b", 0.5, 0, 4.0}, {"c", 1.0, 0, 1.0}});
    const CovarianceMatrix diag({"a", "b", "c"}, {{9, 0, 0}, {0, 16, 0}, {0, 0, 1}});
    const auto c = consistency_check(m);
    CHECK(explained_variance(m, diag) == Approx(c.sd_l2 * c.sd_l2).epsilon(1e-12));

    const std::vector<double> s{3, 4, 1};
    std::vector<std::vector<double>> full(3, std::vector<double>(3));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            full[i][j] = s[i] * s[j];
        }
    }
    CHECK(explained_variance(m, CovarianceMatrix({"a", "b", "c"}, full)) ==
          Approx(c.sd_l1 * c.sd_l1).epsilon(1e-12));
}

TEST_CASE("explained variance matches a double-loop quadratic form") {
    testing::Gen g(77);
    for (int trial = 0; trial < 25; ++trial) {
        // C = BᵀB is PSD
        double b[4][4];
        for (auto& r : b) {
            for (double& x : r) x = g.uniform(-2, 2);
        }
        std::vector<std::vector<double>> c(4, std::vector<double>(4, 0.0));
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                for (int k = 0; k < 4; ++k) {
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += b[k][i] * b[k][j];
                }
            }
        }
        std::vector<PredictorSummary> ps;
        for (int i = 0; i < 4; ++i) {
            ps.push_back({"x" + std::to_string(i), g.uniform(-5, 5), 0.0,
                          std::sqrt(c[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)])});
        }
        const auto m = make_model("r", 0, ps);
        double oracle = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                oracle += ps[i].coefficient * ps[j].coefficient * c[i][j];
            }
        }
        // covariance rows given in reverse order; matching is by name
        std::vector<std::string> names{"x3", "x2", "x1", "x0"};
        std::vector<std::vector<double>> rev(4, std::vector<double>(4));
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                rev[i][j] = c[3 - i][3 - j];
            }
        }
        CHECK(std::abs(explained_variance(m, CovarianceMatrix(names, rev)) - oracle) < 1e-9 * std::max(1.0, oracle));
    }
}

TEST_CASE("explained variance and covariance validation errors") {
    const auto m = make_model("m", 0, {{"a", 1, 0, 1}, {"b", 1, 0, 1}});
    CHECK_THROWS_AS(CovarianceMatrix({"a", "b"}, {{1, 0.5}, {0.4, 1}}), input_error);
    CHECK_THROWS_AS(CovarianceMatrix({"a", "b"}, {{-1, 0}, {0, 1}}), input_error);
    CHECK_THROWS_AS(CovarianceMatrix({"a", "b"}, {{1, 0}}), input_error);
    CHECK_THROWS_AS(CovarianceMatrix({"a", "a"}, {{1, 0}, {0, 1}}), input_error);
    CHECK_THROWS_AS(explained_variance(m, CovarianceMatrix({"a", "c"}, {{1, 0}, {0, 1}})), input_error);
    CHECK_THROWS_AS(explained_variance(m, CovarianceMatrix({"a"}, {{1}})), input_error);
    // correlation 2: not PSD
    CHECK_THROWS_AS(explained_variance(m, CovarianceMatrix({"a", "b"}, {{1, 2}, {2, 1}})), input_error);
    CHECK(CovarianceMatrix({"a", "b"}, {{4, 3}, {3, 9}}).correlation(0, 1) == Approx(0.5));
}

TEST_CASE("zfold reproduces the Benning sled composite") {
    const auto m = testing::bundled_model("benning8");
    const auto f = zfold(m, {"sled-drag", "sled-push", "shuttle-run"}, "sdc", 1.0);
    double var = 0.0, wm = 0.0;
    for (const auto& n : {"sled-drag", "sled-push", "shuttle-run"}) {
        const auto& p = m.predictors[*m.find(n)];
        var += p.sd * p.sd;
        wm += p.sd * p.mean;
    }
    const auto& sdc = f.predictors[*f.find("sdc")];
    CHECK(sdc.sd == Approx(std::sqrt(var)).epsilon(1e-12));
    CHECK(sdc.mean == Approx(wm / std::sqrt(var)).epsilon(1e-12));
    CHECK(std::abs(sdc.sd - 55.8) <= 0.1);
    CHECK(std::abs(sdc.mean - 82.4) <= 0.3);
    CHECK(f.predictors.size() == m.predictors.size() - 2);
    CHECK(f.predictors.front().name == "sdc"); // took sled-drag's slot
    CHECK_FALSE(f.find("sled-push"));
    CHECK(f.reported == m.reported);
}

TEST_CASE("zfold identities and errors") {
    const auto m = make_model("m", 1, {{"a", 2.0, 10.0, 3.0}, {"b", 1.0, 10.0, 3.0}, {"c", 1.0, 5.0, 2.0}});
    const auto one = zfold(m, {"c"}, "c2", 4.0);
    CHECK(one.predictors[2].mean == Approx(5.0));
    CHECK(one.predictors[2].sd == Approx(2.0));
    const auto two = zfold(m, {"a", "b"}, "ab", 1.0);
    CHECK(two.predictors[0].sd == Approx(3.0 * std::sqrt(2.0)));
    CHECK(two.predictors[0].mean == Approx(10.0 * std::sqrt(2.0)));
    CHECK_THROWS_AS(zfold(m, {}, "x", 1.0), input_error);
    CHECK_THROWS_AS(zfold(m, {"zz"}, "x", 1.0), input_error);
    CHECK_THROWS_AS(zfold(m, {"a", "a"}, "x", 1.0), input_error);
    const auto flat = make_model("f", 0, {{"a", 1, 1, 0}, {"b", 1, 1, 0}, {"c", 1, 1, 1}});
    CHECK_THROWS_AS(zfold(flat, {"a", "b"}, "x", 1.0), degenerate_error);
}

TEST_CASE("weight_shares examples") {
    for (const auto& [n, v] : weight_shares({{"a", 7}, {"b", 7}, {"c", 7}, {"d", 7}}, 1.6)) {
        CHECK(v == Approx(0.25).epsilon(1e-12));
    }
    const auto s = weight_shares({{"a", 2}, {"b", 1}, {"c", 1}}, 1.0);
    CHECK(s[0].second == Approx(0.5));
    CHECK(s[1].second == Approx(0.25));
    const std::vector<double> sd{120, 40, 80, 65};
    double total = 0.0;
    for (double x : sd) total += std::pow(x, 1.3);
    const auto v = weight_shares({{"hasty", 120}, {"ouat", 40}, {"combatives", 80}, {"evac", 65}}, 1.3);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(v[i].second - std::pow(sd[i], 1.3) / total) < 1e-9);
    }
    CHECK_THROWS_AS(weight_shares({{"a", 0}, {"b", 0}}, 1.0), degenerate_error);
    CHECK_THROWS_AS(weight_shares({{"a", -1}, {"b", 2}}, 1.0), input_error);
    CHECK_THROWS_AS(weight_shares({{"a", 1}}, 2.5), input_error);
}

TEST_CASE("lp_aggregate endpoints equal the consistency L1 and L2") {
    const auto m = testing::bundled_model("riley7");
    const auto c = consistency_check(m);
    CHECK(lp_aggregate(m, 1.0) == Approx(c.sd_l1).epsilon(1e-12));
    CHECK(lp_aggregate(m, 2.0) == Approx(c.sd_l2).epsilon(1e-12));
}
