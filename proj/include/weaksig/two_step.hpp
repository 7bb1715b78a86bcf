#pragma once

#include <vector>

#include <Eigen/Dense>

#include "weaksig/core_model.hpp"
#include "weaksig/signal_id.hpp"

namespace weaksig {

enum class IntervalRule { Asymptotic, LeastSquare };

// One per-coefficient confidence interval: center +/- half_width with
// half_width = z_{alpha/2} * se.
struct IntervalReport {
    int index = 0;
    IntervalRule rule = IntervalRule::LeastSquare;
    double center = 0.0;
    double half_width = 0.0;
    double bias = 0.0;  // 0 under the LeastSquare rule
    double se = 0.0;
    double alpha = 0.0;
};

// Bias of the adaptive-Lasso estimate on the active set:
// (X_A'X_A/n)^{-1} kappa with kappa_j = lambda * sgn(theta_j) / |theta_ls_j|.
// Throws std::invalid_argument when an active coefficient is zero in either
// theta_al or theta_ls.
Eigen::VectorXd alasso_bias(const FitResult& fit, const std::vector<int>& active,
                            const Dataset& d);

// Sandwich covariance {X_A'X_A + n lambda Omega}^{-1} X_A'X_A
// {X_A'X_A + n lambda Omega}^{-1} sigma_hat^2 with
// Omega = diag(1 / (|theta_j| |theta_ls_j|)). When bias_corrected is set the
// diagonal uses |theta_j + bias_j| in place of |theta_j|, which is the form
// the interval builder uses.
Eigen::MatrixXd alasso_covariance(const FitResult& fit, const std::vector<int>& active,
                                  const Dataset& d, bool bias_corrected = false);

// Two-step intervals: strong coefficients get the bias-corrected asymptotic
// interval (center theta_j + bias_j, sandwich se with the corrected Omega),
// weak coefficients get the least-squares interval with the full-model OLS
// standard error, noise coefficients get none.
std::vector<IntervalReport> build_intervals(const FitResult& fit,
                                            const SignalClassification& cls,
                                            const TheoryConfig& cfg, const Dataset& d);

}  // namespace weaksig
