#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "hfa/errors.hpp"
#include "hfa/inference.hpp"
#include "test_util.hpp"

using namespace hfa;

TEST_CASE("delta_hat is the plain mean") {
    CHECK(delta_hat({1, 2, 3}) == doctest::Approx(2.0));
    CHECK(delta_hat(std::vector<double>(15, 1.0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(delta_hat({}), Error);
}

TEST_CASE("sigma2_hat: total-variance decomposition") {
    SUBCASE("noiseless three effects") {
        Sigma2Estimate s = sigma2_hat({1, 2, 3}, {0, 0, 0});
        CHECK(s.raw == doctest::Approx(1.0));
        CHECK(s.clamped == doctest::Approx(1.0));
    }
    SUBCASE("forced negative branch clamps to zero") {
        Sigma2Estimate s = sigma2_hat({2, 2, 2, 2}, {0.1, 0.1, 0.1, 0.1});
        CHECK(s.raw == doctest::Approx(-0.1));
        CHECK(s.clamped == 0.0);
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(sigma2_hat({1.0}, {0.0}), Error);
        CHECK_THROWS_AS(sigma2_hat({1, 2}, {0.0}), Error);
    }
}

TEST_CASE("var_delta_hat modes") {
    // sigma2=0.09, sigma2_beta=2, n=20: 0.0045 + 2/760.
    CHECK(var_delta_hat(0.09, 2.0, 20, VarianceMode::Total) ==
          doctest::Approx(0.0045 + 2.0 / 760.0).epsilon(1e-14));
    CHECK(var_delta_hat(0.09, 2.0, 20, VarianceMode::Literal) ==
          doctest::Approx(0.0045).epsilon(1e-14));
    // Zero row noise: modes agree.
    CHECK(var_delta_hat(0.2, 0.0, 10, VarianceMode::Total) ==
          doctest::Approx(var_delta_hat(0.2, 0.0, 10, VarianceMode::Literal)));
    // n=80, sigma2_beta=4: 0.001125 + 4/12640.
    CHECK(var_delta_hat(0.09, 4.0, 80, VarianceMode::Total) ==
          doctest::Approx(0.09 / 80 + 4.0 / 12640.0).epsilon(1e-14));
}

TEST_CASE("confidence_interval") {
    Interval ci = confidence_interval(0.0, 1.0, 0.05);
    CHECK(ci.lower == doctest::Approx(-1.959963984540054).epsilon(1e-10));
    CHECK(ci.upper == doctest::Approx(1.959963984540054).epsilon(1e-10));

    Interval deg = confidence_interval(2.5, 0.0, 0.05);
    CHECK(deg.lower == 2.5);
    CHECK(deg.upper == 2.5);

    // Published-table shape: point 1.568, se 0.556.
    Interval t3 = confidence_interval(1.568, 0.556 * 0.556, 0.05);
    CHECK(t3.lower == doctest::Approx(0.478).epsilon(5e-3));
    CHECK(t3.upper == doctest::Approx(2.658).epsilon(5e-3));

    CHECK_THROWS_AS(confidence_interval(0, 1, 0.0), Error);
    CHECK_THROWS_AS(confidence_interval(0, 1, 1.0), Error);
    CHECK_THROWS_AS(confidence_interval(0, -1, 0.05), Error);
}

TEST_CASE("z_test") {
    CHECK(z_test(0.0, 1.0).p == doctest::Approx(1.0));
    // |point|/se at the 97.5% quantile gives p = 0.05 by definition.
    CHECK(z_test(1.959963984540054, 1.0).p == doctest::Approx(0.05).epsilon(1e-10));
    // 1.568 / 0.556 -> approx 0.0048.
    CHECK(z_test(1.568, 0.556 * 0.556).p == doctest::Approx(0.0048002).epsilon(1e-4));

    PValueResult deg0 = z_test(0.7, 0.0);
    CHECK(deg0.p == 0.0);
    CHECK(deg0.degenerate);
    PValueResult deg1 = z_test(0.0, 0.0);
    CHECK(deg1.p == 1.0);
    CHECK(deg1.degenerate);
}

TEST_CASE("CI duality: p < alpha iff the CI excludes zero") {
    std::mt19937_64 rng(303);
    std::uniform_real_distribution<double> point(-4.0, 4.0);
    std::uniform_real_distribution<double> var(0.01, 9.0);
    std::uniform_real_distribution<double> lvl(0.001, 0.4);
    for (int trial = 0; trial < 2000; ++trial) {
        double pt = point(rng);
        double v = var(rng);
        double alpha = lvl(rng);
        Interval ci = confidence_interval(pt, v, alpha);
        bool excludes_zero = ci.lower > 0.0 || ci.upper < 0.0;
        bool rejects = z_test(pt, v).p < alpha;
        CHECK(rejects == excludes_zero);
    }
}

TEST_CASE("p-value strictly decreases in |point| at fixed variance") {
    double prev = z_test(0.0, 2.0).p;
    for (double pt = 0.1; pt < 6.0; pt += 0.1) {
        double cur = z_test(pt, 2.0).p;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("scale equivariance through the whole estimation chain") {
    std::mt19937_64 rng(11);
    const int n = 10;
    std::normal_distribution<double> dist(1.0, 1.0);
    std::vector<double> beta(n);
    for (double& b : beta) b = dist(rng);
    auto alpha_tab = testutil::random_antisymmetric(n, rng);
    auto net = testutil::noiseless_net(beta, alpha_tab);
    // Add a bit of symmetric noise so residuals are nonzero.
    std::normal_distribution<double> noise(0.0, 0.7);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) net[i][j] += noise(rng);
        }
    }

    auto run = [&](double k) {
        auto scaled = net;
        for (auto& row : scaled) {
            for (double& v : row) v *= k;
        }
        DesignSystem d = build_design(testutil::pairs_from_net(n, scaled));
        EffectEstimates est = estimate_effects(d);
        return league_inference(est, 0.05, VarianceMode::Total);
    };

    LeagueInference one = run(1.0);
    LeagueInference scaled = run(3.0);
    CHECK(scaled.delta_hat == doctest::Approx(3.0 * one.delta_hat).epsilon(1e-10));
    CHECK(scaled.sigma2_raw == doctest::Approx(9.0 * one.sigma2_raw).epsilon(1e-10));
    CHECK(scaled.p_value == doctest::Approx(one.p_value).epsilon(1e-9));
}

TEST_CASE("league_inference assembles the pieces coherently") {
    std::mt19937_64 rng(21);
    const int n = 12;
    std::normal_distribution<double> dist(1.0, 0.5);
    std::vector<double> beta(n);
    for (double& b : beta) b = dist(rng);
    auto net = testutil::noiseless_net(beta, testutil::random_antisymmetric(n, rng));
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) net[i][j] += noise(rng);
        }
    }
    DesignSystem d = build_design(testutil::pairs_from_net(n, net));
    EffectEstimates est = estimate_effects(d);
    LeagueInference league = league_inference(est, 0.05, VarianceMode::Total);

    CHECK(league.delta_hat == doctest::Approx(delta_hat(est.beta_hat)));
    CHECK(league.sigma2_clamped >= 0.0);
    // CI symmetric about the point estimate.
    CHECK(league.ci.upper - league.delta_hat ==
          doctest::Approx(league.delta_hat - league.ci.lower).epsilon(1e-12));
    CHECK(league.p_value >= 0.0);
    CHECK(league.p_value <= 1.0);

    std::vector<TeamEffect> teams = team_inference(est, 0.05);
    REQUIRE(teams.size() == static_cast<size_t>(n));
    for (const auto& t : teams) {
        CHECK(t.se == doctest::Approx(std::sqrt(est.cov_diag[t.team])));
        CHECK(t.ci.upper - t.beta_hat ==
              doctest::Approx(t.beta_hat - t.ci.lower).epsilon(1e-12));
    }
    // Complete design: every team has the same standard error.
    for (size_t i = 1; i < teams.size(); ++i) CHECK(teams[i].se == teams[0].se);
}

TEST_CASE("variance mode parsing") {
    CHECK(parse_variance_mode("literal") == VarianceMode::Literal);
    CHECK(parse_variance_mode("total") == VarianceMode::Total);
    CHECK_THROWS_AS(parse_variance_mode("bogus"), Error);
}
