#pragma once

#include <Eigen/Dense>

namespace weaksig {

// Regression data with columns scaled so every column satisfies X_j'X_j = n.
struct Dataset {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    Eigen::Index n = 0;
    Eigen::Index p = 0;
};

// Standardization output. Columns of the returned dataset are
// (raw_j - center_j) * scale_j; a coefficient theta on the standardized scale
// corresponds to theta * scale_j on the raw scale.
struct StandardizeResult {
    Dataset data;
    Eigen::VectorXd scale;
    Eigen::VectorXd center;
    bool centered = false;
};

// OLS and adaptive-Lasso coefficients at one tuning value.
struct FitResult {
    Eigen::VectorXd theta_ls;
    Eigen::VectorXd theta_al;
    double lambda = 0.0;
    double sigma_hat = 0.0;
};

// Scales (and optionally centers) raw columns so X_j'X_j = n.
// Throws std::invalid_argument naming the column when a column has zero
// variance (centered) or is identically zero (uncentered).
StandardizeResult standardize(const Eigen::MatrixXd& raw_X, const Eigen::VectorXd& raw_y,
                              bool center = false);

// Least-squares coefficients (X'X)^{-1} X'y. Throws std::runtime_error naming
// the smallest singular value when the gram matrix's condition number exceeds
// 1e12.
Eigen::VectorXd ols_fit(const Dataset& d);

// ols_fit plus the gram inverse and the singular-value extremes of X'X,
// for callers that need standard errors or condition diagnostics.
struct OlsSolution {
    Eigen::VectorXd theta;
    Eigen::MatrixXd gram_inv;
    double smin = 0.0;
    double smax = 0.0;
};
OlsSolution ols_solve(const Dataset& d);

enum class SigmaRule {
    // Scaled lasso with the universal penalty level sqrt(2 log p / n).
    ScaledLassoUniversal,
    // Scaled lasso with the quantile-based penalty level (iterate
    // L <- average of L and -Phi^{-1}(min((L^4+2L^2)/p, 0.99)) from L=0.1,
    // then lambda0 = sqrt(2/n) * L).
    ScaledLassoQuantile,
    // Residual estimator ||y - X theta_ls||^2 / (n - p); requires n > p + 1.
    OlsResidual,
};

struct SigmaEstimate {
    double value = 0.0;
    bool converged = true;
    int iterations = 0;
    SigmaRule rule = SigmaRule::ScaledLassoUniversal;
};

// Noise-scale estimate. The scaled-lasso rules alternate a lasso fit at
// penalty sigma*lambda0 with sigma^2 = ||y - X theta||^2 / n until the change
// drops below 1e-6 (at most 100 iterations; non-convergence sets
// converged = false and returns the last iterate).
SigmaEstimate estimate_sigma(const Dataset& d,
                             SigmaRule rule = SigmaRule::ScaledLassoUniversal);

// The scaled-lasso penalty level for a given rule (exposed for tests).
double sigma_lambda0(Eigen::Index n, Eigen::Index p, SigmaRule rule);

}  // namespace weaksig
