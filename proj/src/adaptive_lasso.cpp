#include "weaksig/adaptive_lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace weaksig {

double alasso_soft_threshold(double theta_ls, double lambda) {
    const double a = std::fabs(theta_ls);
    if (a <= std::sqrt(lambda)) return 0.0;
    const double shrunk = a - lambda / a;
    if (shrunk <= 0.0) return 0.0;
    return theta_ls > 0.0 ? shrunk : -shrunk;
}

Eigen::VectorXd weighted_lasso_cd(const Eigen::MatrixXd& gram, const Eigen::VectorXd& xty,
                                  Eigen::Index n, double lambda, const Eigen::VectorXd& weights,
                                  Eigen::VectorXd theta0, double tol, int max_sweeps) {
    const Eigen::Index p = gram.rows();
    Eigen::VectorXd theta = std::move(theta0);
    for (Eigen::Index j = 0; j < p; ++j) {
        if (!std::isfinite(weights(j)) && theta(j) != 0.0) theta(j) = 0.0;
    }
    Eigen::VectorXd gt = gram * theta;
    const double dn = static_cast<double>(n);

    double max_change = 0.0;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        max_change = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (!std::isfinite(weights(j))) continue;
            // Columns carry X_j'X_j = n, so the coordinate update is a unit
            // quadratic with a soft threshold at lambda * w_j.
            const double u = (xty(j) - gt(j)) / dn + theta(j);
            const double t = lambda * weights(j);
            double next = 0.0;
            if (u > t) {
                next = u - t;
            } else if (u < -t) {
                next = u + t;
            }
            // |u| - t below the rounding noise of u and t is a boundary tie,
            // not support; keep the sparse branch so later 1/|theta_j| terms
            // and support tests never see one-ulp debris.
            if (std::fabs(next) <=
                4.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(u), t)) {
                next = 0.0;
            }
            const double delta = next - theta(j);
            if (delta != 0.0) {
                gt += gram.col(j) * delta;
                theta(j) = next;
                max_change = std::max(max_change, std::fabs(delta));
            }
        }
        if (max_change < tol) return theta;
    }
    std::ostringstream msg;
    msg << "weighted_lasso_cd: no convergence after " << max_sweeps
        << " sweeps (last max coordinate change " << max_change << ")";
    throw std::runtime_error(msg.str());
}

namespace {

Eigen::VectorXd alasso_weights(const Eigen::VectorXd& theta_ls) {
    Eigen::VectorXd w(theta_ls.size());
    for (Eigen::Index j = 0; j < theta_ls.size(); ++j) {
        w(j) = theta_ls(j) == 0.0 ? std::numeric_limits<double>::infinity()
                                  : 1.0 / std::fabs(theta_ls(j));
    }
    return w;
}

}  // namespace

FitResult alasso_fit(const Dataset& d, double lambda, double sigma_hat) {
    if (lambda < 0.0) throw std::invalid_argument("alasso_fit: lambda must be nonnegative");
    if (!(sigma_hat > 0.0)) throw std::invalid_argument("alasso_fit: sigma_hat must be positive");
    FitResult fit;
    fit.theta_ls = ols_fit(d);
    fit.lambda = lambda;
    fit.sigma_hat = sigma_hat;
    const Eigen::MatrixXd gram = d.X.transpose() * d.X;
    const Eigen::VectorXd xty = d.X.transpose() * d.y;
    fit.theta_al = weighted_lasso_cd(gram, xty, d.n, lambda, alasso_weights(fit.theta_ls),
                                     Eigen::VectorXd::Zero(d.p));
    return fit;
}

double bic_value(const Dataset& d, const Eigen::VectorXd& theta_ls,
                 const Eigen::VectorXd& theta, double lambda, double sigma_hat) {
    const Eigen::VectorXd diff = theta - theta_ls;
    double quad = diff.dot(d.X.transpose() * (d.X * diff));
    int q = 0;
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
        if (theta(j) != 0.0) {
            ++q;
            quad += static_cast<double>(d.n) * lambda * diff(j) * diff(j) /
                    (std::fabs(theta(j)) * std::fabs(theta_ls(j)));
        }
    }
    const double dn = static_cast<double>(d.n);
    return quad / (dn * sigma_hat * sigma_hat) + q * std::log(dn) / dn;
}

TuningGrid bic_select_on_grid(const Dataset& d, double sigma_hat,
                              const Eigen::VectorXd& lambdas) {
    if (lambdas.size() < 1) throw std::invalid_argument("bic_select: empty grid");
    if (!(sigma_hat > 0.0)) throw std::invalid_argument("bic_select: sigma_hat must be positive");

    const Eigen::VectorXd theta_ls = ols_fit(d);
    const Eigen::MatrixXd gram = d.X.transpose() * d.X;
    const Eigen::VectorXd xty = d.X.transpose() * d.y;
    const Eigen::VectorXd weights = alasso_weights(theta_ls);

    TuningGrid grid;
    grid.lambdas = lambdas;
    grid.bic_values.resize(lambdas.size());

    // Warm-start down the grid; strict less-than keeps the largest lambda on
    // BIC ties.
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d.p);
    double best = std::numeric_limits<double>::infinity();
    bool any_nonzero = false;
    for (Eigen::Index k = 0; k < lambdas.size(); ++k) {
        theta = weighted_lasso_cd(gram, xty, d.n, grid.lambdas(k), weights, theta);
        any_nonzero = any_nonzero || (theta.array() != 0.0).any();
        grid.bic_values(k) = bic_value(d, theta_ls, theta, grid.lambdas(k), sigma_hat);
        if (grid.bic_values(k) < best) {
            best = grid.bic_values(k);
            grid.selected_index = k;
        }
    }
    if (!any_nonzero) {
        grid.selected_index = lambdas.size() - 1;
        grid.all_zero_warning = true;
    }
    return grid;
}

TuningGrid bic_select(const Dataset& d, double sigma_hat, int n_grid, double decades) {
    if (n_grid < 1) throw std::invalid_argument("bic_select: empty grid");
    const Eigen::VectorXd xty = d.X.transpose() * d.y;
    const Eigen::VectorXd theta_ls = ols_fit(d);
    const double lam_max = (xty.cwiseAbs().maxCoeff() / static_cast<double>(d.n)) *
                           theta_ls.cwiseAbs().maxCoeff();
    Eigen::VectorXd lambdas(n_grid);
    for (int k = 0; k < n_grid; ++k) {
        const double e = n_grid == 1 ? 0.0 : -decades * k / (n_grid - 1.0);
        lambdas(k) = lam_max * std::pow(10.0, e);
    }
    return bic_select_on_grid(d, sigma_hat, lambdas);
}

}  // namespace weaksig
