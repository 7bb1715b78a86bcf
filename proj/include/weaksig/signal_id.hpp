#pragma once

#include <vector>

#include "weaksig/core_model.hpp"

namespace weaksig {

// The quintuple driving every closed-form detection and coverage function.
struct TheoryConfig {
    int n = 0;
    double sigma = 0.0;
    double lambda = 0.0;
    double alpha = 0.0;
    double tau = 0.0;
};

// Regularity checks: (C1) tau >= alpha; (C2) tau < 2 Phi(-z_{a/2}/2) - alpha;
// lambda criterion sqrt(lambda) >= z_{a/2} sigma / sqrt(n).
struct ConfigCheck {
    bool c1 = false;
    bool c2 = false;
    bool lambda_criterion = false;
    bool all() const { return c1 && c2 && lambda_criterion; }
};
ConfigCheck check_config(const TheoryConfig& cfg);

// Upper alpha/2 and tau/2 normal quantiles for a config.
double z_alpha(const TheoryConfig& cfg);
double z_tau(const TheoryConfig& cfg);

// Minimal detection probability 2 Phi(-sqrt(n lambda)/sigma), attained at
// theta = 0.
double tau0(const TheoryConfig& cfg);

// P(theta-hat != 0 | theta) for the orthogonal adaptive Lasso:
// Phi((theta - sqrt(lambda))/(sigma/sqrt(n))) + Phi((-theta - sqrt(lambda))/(sigma/sqrt(n))).
double detection_prob(double theta, const TheoryConfig& cfg);

// detection_prob evaluated at an observed least-squares estimate.
double estimated_detection_prob(double theta_ls, const TheoryConfig& cfg);

// Closed-form mean of the plug-in detection probability over the sampling
// distribution of theta-hat_LS.
double expected_detection_prob(double theta, const TheoryConfig& cfg);

// The positive root of detection_prob(nu) = gamma, found by bisection.
// Throws std::domain_error reporting tau0 when gamma <= tau0.
double nu_for_gamma(double gamma, const TheoryConfig& cfg);

// Classification thresholds.
double nu1_threshold(const TheoryConfig& cfg);  // z_{tau/2} sigma / sqrt(n)
double nu2_threshold(const TheoryConfig& cfg);  // sqrt(lambda) + z_{a/2} sigma / sqrt(n)

enum class SignalClass { Noise, Weak, Strong };

// Noise if |t| <= nu1, weak if nu1 < |t| <= nu2, strong if |t| > nu2.
SignalClass classify_one(double theta_ls, double nu1, double nu2);

struct SignalClassification {
    std::vector<int> noise_set;
    std::vector<int> weak_set;
    std::vector<int> strong_set;
    double nu1 = 0.0;
    double nu2 = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

// Partitions all coefficient indices by |theta_ls| against (nu1, nu2) and
// reports the detection probabilities gamma_k = detection_prob(nu_k).
// Throws std::invalid_argument when nu1 >= nu2.
SignalClassification classify(const FitResult& fit, const TheoryConfig& cfg);

}  // namespace weaksig
