#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "weaksig/normal.hpp"
#include "weaksig/rng.hpp"
#include "weaksig/signal_id.hpp"

using namespace weaksig;

namespace {

// The simulation-scale configuration used throughout the theory checks.
const TheoryConfig kBaseCfg{100, 2.0, 0.16, 0.05, 0.2};

// A data-analysis-scale configuration: n = 702, sigma-hat = 0.8244,
// sqrt(lambda) = 0.075, alpha = tau = 0.05.
const TheoryConfig kWideCfg{702, 0.8244, 0.075 * 0.075, 0.05, 0.05};

}  // namespace

TEST_CASE("config checks encode the validity region") {
    const ConfigCheck ok = check_config(kBaseCfg);
    CHECK(ok.c1);
    CHECK(ok.c2);
    CHECK(ok.lambda_criterion);
    CHECK(ok.all());

    TheoryConfig bad_c1 = kBaseCfg;
    bad_c1.tau = 0.01;  // tau below alpha
    CHECK_FALSE(check_config(bad_c1).c1);

    // The c2 bound at alpha = 0.05 is 2 Phi(-z/2) - alpha = 0.27709500769114070.
    TheoryConfig bad_c2 = kBaseCfg;
    bad_c2.tau = 0.28;
    CHECK_FALSE(check_config(bad_c2).c2);
    TheoryConfig edge_c2 = kBaseCfg;
    edge_c2.tau = 0.277;
    CHECK(check_config(edge_c2).c2);

    TheoryConfig bad_lambda = kBaseCfg;
    bad_lambda.lambda = 0.1;  // sqrt(0.1) < 1.96 * 0.2
    CHECK_FALSE(check_config(bad_lambda).lambda_criterion);
    CHECK_FALSE(check_config(bad_lambda).all());
}

TEST_CASE("detection probability hits its closed-form pins") {
    CHECK(tau0(kBaseCfg) == doctest::Approx(0.045500263896358414).epsilon(1e-14));
    CHECK(detection_prob(0.0, kBaseCfg) == doctest::Approx(tau0(kBaseCfg)).epsilon(1e-15));
    CHECK(detection_prob(0.3, kBaseCfg) == doctest::Approx(0.30877016780502242).epsilon(1e-14));
    CHECK(detection_prob(0.4, kBaseCfg) == doctest::Approx(0.50003167124183312).epsilon(1e-14));
    CHECK(detection_prob(1.0, kBaseCfg) == doctest::Approx(0.99865010196964972).epsilon(1e-14));
    // At theta = sqrt(lambda) with a large n lambda / sigma^2 the first term
    // is exactly 1/2 and the mirrored term is negligible.
    TheoryConfig sharp = kBaseCfg;
    sharp.n = 10000;
    CHECK(detection_prob(std::sqrt(sharp.lambda), sharp) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("detection probability is symmetric and monotone in |theta|") {
    double prev = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double theta = 1.5 * i / 200.0;
        const double pd = detection_prob(theta, kBaseCfg);
        CHECK(pd == doctest::Approx(detection_prob(-theta, kBaseCfg)).epsilon(1e-15));
        CHECK(pd >= prev - 1e-15);
        CHECK(pd >= tau0(kBaseCfg) - 1e-15);
        CHECK(pd <= 1.0);
        prev = pd;
    }
    CHECK(detection_prob(3.0, kBaseCfg) > 1.0 - 1e-10);
}

TEST_CASE("estimated detection probability is the plug-in curve") {
    for (double t : {-0.5, 0.0, 0.3, 0.9}) {
        CHECK(estimated_detection_prob(t, kBaseCfg) ==
              doctest::Approx(detection_prob(t, kBaseCfg)).epsilon(1e-15));
    }
}

TEST_CASE("expected detection probability matches its closed form") {
    CHECK(expected_detection_prob(0.0, kBaseCfg) == 0.0);
    CHECK(expected_detection_prob(0.8, kBaseCfg) ==
          doctest::Approx(0.92133935122635814).epsilon(1e-14));
    CHECK(expected_detection_prob(1.2, kBaseCfg) ==
          doctest::Approx(0.99766112480084742).epsilon(1e-14));
}

TEST_CASE("expected detection probability agrees with Monte Carlo away from zero") {
    // E P_d-hat is the mean of detection_prob(t) over t ~ N(theta, sigma^2/n).
    // The reported closed form coincides with that mean once the mirrored
    // tail Phi(-sqrt(n)(theta+sqrt(lambda))/(sqrt(2) sigma)) is negligible
    // (theta >= 1.5 sqrt(lambda) at this scale); closer to zero it is a
    // display convention rather than the exact mean, so the comparison stays
    // in the regime where the two agree.
    RngStream stream(77, 0, purpose::kOracle);
    const double se = kBaseCfg.sigma / std::sqrt(100.0);
    for (double theta : {0.6, 0.8, 1.2}) {
        double acc = 0.0;
        const int draws = 2000000;
        for (int i = 0; i < draws; ++i) {
            acc += estimated_detection_prob(theta + se * stream.normal(), kBaseCfg);
        }
        CHECK(std::fabs(acc / draws - expected_detection_prob(theta, kBaseCfg)) <= 2e-3);
    }
}

TEST_CASE("true detection dominates the expected estimate for strong signals") {
    const double root_lam = std::sqrt(kBaseCfg.lambda);
    for (int i = 1; i <= 400; ++i) {
        const double theta = root_lam + 2.0 * i / 400.0;
        CHECK(detection_prob(theta, kBaseCfg) > expected_detection_prob(theta, kBaseCfg));
    }
}

TEST_CASE("nu_for_gamma inverts the detection curve") {
    for (double gamma : {0.05, 0.2, 0.5, 0.9, 0.99}) {
        const double nu = nu_for_gamma(gamma, kBaseCfg);
        CHECK(nu > 0.0);
        CHECK(std::fabs(detection_prob(nu, kBaseCfg) - gamma) <= 1e-9);
    }
    // Strictly increasing in gamma.
    CHECK(nu_for_gamma(0.3, kBaseCfg) < nu_for_gamma(0.31, kBaseCfg));
}

TEST_CASE("nu_for_gamma rejects unattainable detection levels") {
    const double floor = tau0(kBaseCfg);
    CHECK_THROWS_WITH_AS(nu_for_gamma(floor * 0.5, kBaseCfg), doctest::Contains("tau0"),
                         std::domain_error);
    CHECK_THROWS_AS(nu_for_gamma(floor, kBaseCfg), std::domain_error);
    CHECK_THROWS_AS(nu_for_gamma(1.0, kBaseCfg), std::domain_error);
}

TEST_CASE("the median detection threshold tracks sqrt(lambda) as n grows") {
    // With lambda_n = n^(-3/4) and sigma = 1, nu at gamma = 1/2 approaches
    // sqrt(lambda_n) from below; the relative gap shrinks monotonically.
    double prev_gap = 1.0;
    for (int n : {100, 10000, 1000000, 100000000}) {
        TheoryConfig cfg;
        cfg.n = n;
        cfg.sigma = 1.0;
        cfg.lambda = std::pow(static_cast<double>(n), -0.75);
        cfg.alpha = 0.05;
        cfg.tau = 0.2;
        const double ratio = nu_for_gamma(0.5, cfg) / std::sqrt(cfg.lambda);
        const double gap = std::fabs(ratio - 1.0);
        CHECK(ratio <= 1.0 + 1e-9);
        // Once the true gap falls under the root solver's resolution the
        // successive values are noise, so only require decay down to there.
        CHECK(gap <= std::max(0.5 * prev_gap, 1e-9));
        prev_gap = gap;
    }
    CHECK(prev_gap <= 1e-8);
}

TEST_CASE("classification thresholds follow their closed forms") {
    CHECK(nu1_threshold(kBaseCfg) == doctest::Approx(0.25631031310892009).epsilon(1e-14));
    CHECK(nu2_threshold(kBaseCfg) == doctest::Approx(0.79199279690801085).epsilon(1e-14));

    CHECK(nu1_threshold(kWideCfg) == doctest::Approx(0.060984226260595111).epsilon(1e-12));
    CHECK(nu2_threshold(kWideCfg) == doctest::Approx(0.13598422626059511).epsilon(1e-12));
}

TEST_CASE("classify partitions indices and reports detection levels") {
    Eigen::VectorXd theta_ls(6);
    const double nu1 = nu1_threshold(kBaseCfg);
    const double nu2 = nu2_threshold(kBaseCfg);
    theta_ls << 0.0, nu1, -0.5, nu2, 1.4, -nu2 - 0.01;
    FitResult fit;
    fit.theta_ls = theta_ls;
    fit.theta_al = theta_ls;
    fit.lambda = kBaseCfg.lambda;
    fit.sigma_hat = kBaseCfg.sigma;

    const SignalClassification cls = classify(fit, kBaseCfg);
    // Boundaries belong to the lower class: |t| = nu1 is noise, |t| = nu2 weak.
    CHECK(cls.noise_set == std::vector<int>{0, 1});
    CHECK(cls.weak_set == std::vector<int>{2, 3});
    CHECK(cls.strong_set == std::vector<int>{4, 5});
    CHECK(cls.noise_set.size() + cls.weak_set.size() + cls.strong_set.size() == 6);

    CHECK(cls.gamma1 == doctest::Approx(0.23675660412376067).epsilon(1e-12));
    CHECK(cls.gamma2 == doctest::Approx(0.97500000126146766).epsilon(1e-12));
    CHECK(cls.gamma2 >= 1.0 - kBaseCfg.alpha);
}

TEST_CASE("classify reports the wide-config detection levels") {
    FitResult fit;
    fit.theta_ls = Eigen::VectorXd::Zero(1);
    fit.theta_al = fit.theta_ls;
    const SignalClassification cls = classify(fit, kWideCfg);
    CHECK(cls.gamma1 == doctest::Approx(0.32619880497514411).epsilon(1e-12));
    CHECK(cls.gamma2 == doctest::Approx(0.97500000000597585).epsilon(1e-12));
}

TEST_CASE("classify rejects configurations with inverted thresholds") {
    // tau far below alpha with a tiny lambda puts nu1 above nu2 (such a
    // config also fails (C1), which is the point of the guard).
    TheoryConfig cfg{100, 2.0, 1e-6, 0.3, 0.01};
    CHECK(nu1_threshold(cfg) >= nu2_threshold(cfg));
    FitResult fit;
    fit.theta_ls = Eigen::VectorXd::Zero(2);
    fit.theta_al = fit.theta_ls;
    CHECK_THROWS_AS(classify(fit, cfg), std::invalid_argument);
}

TEST_CASE("a null coefficient escapes the noise class at rate tau") {
    const double taus[] = {0.05, 0.2};
    for (int t = 0; t < 2; ++t) {
        TheoryConfig cfg = kBaseCfg;
        cfg.tau = taus[t];
        const double nu1 = nu1_threshold(cfg);
        const double se = cfg.sigma / std::sqrt(100.0);
        RngStream stream(55, static_cast<std::uint64_t>(t), purpose::kOracle);
        const int draws = 100000;
        int escaped = 0;
        for (int i = 0; i < draws; ++i) {
            if (std::fabs(se * stream.normal()) > nu1) ++escaped;
        }
        CHECK(std::fabs(static_cast<double>(escaped) / draws - cfg.tau) <= 0.01);
    }
}
