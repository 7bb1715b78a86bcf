#pragma once

#include <Eigen/Dense>

#include "weaksig/core_model.hpp"

namespace weaksig {

// BIC evaluations over a descending lambda grid.
struct TuningGrid {
    Eigen::VectorXd lambdas;     // strictly decreasing
    Eigen::VectorXd bic_values;  // same length
    Eigen::Index selected_index = 0;
    bool all_zero_warning = false;  // every grid fit was the zero vector
};

// Scalar closed form of the adaptive-Lasso estimate under orthogonal design:
// (|t| - lambda/|t|)_+ * sgn(t), and 0 when t = 0.
double alasso_soft_threshold(double theta_ls, double lambda);

// Weighted-L1 coordinate descent on the gram system:
// minimizes (1/2n)||y - X theta||^2 + lambda * sum_j w_j |theta_j|.
// Coordinates with a non-finite weight are hard-zeroed. Converges when the
// largest coordinate change in a sweep drops below tol; throws
// std::runtime_error after max_sweeps sweeps (message carries the last
// maximum change).
Eigen::VectorXd weighted_lasso_cd(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty,
                                  Eigen::Index n, double lambda, const Eigen::VectorXd& weights,
                                  Eigen::VectorXd theta0, double tol = 1e-8,
                                  int max_sweeps = 10000);

// Adaptive-Lasso fit at a fixed lambda with weights 1/|theta_ls| from the
// full-model OLS fit.
FitResult alasso_fit(const Dataset& d, double lambda, double sigma_hat);

// BIC(lambda) over a log-spaced grid of n_grid points spanning `decades`
// decades below lambda_max = (max_j |X_j'y|/n) * max_j |theta_ls_j|.
// Ties are broken toward larger lambda; if every fit on the grid is all-zero
// the smallest lambda is selected and flagged.
TuningGrid bic_select(const Dataset& d, double sigma_hat, int n_grid = 100,
                      double decades = 4.0);

// bic_select on a caller-supplied non-increasing lambda grid.
TuningGrid bic_select_on_grid(const Dataset& d, double sigma_hat,
                              const Eigen::VectorXd& lambdas);

// The BIC value for one fitted vector (exposed for tests).
double bic_value(const Dataset& d, const Eigen::VectorXd& theta_ls,
                 const Eigen::VectorXd& theta, double lambda, double sigma_hat);

}  // namespace weaksig
