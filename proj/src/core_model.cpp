#include "weaksig/core_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "weaksig/adaptive_lasso.hpp"
#include "weaksig/normal.hpp"

namespace weaksig {

StandardizeResult standardize(const Eigen::MatrixXd& raw_X, const Eigen::VectorXd& raw_y,
                              bool center) {
    if (raw_X.rows() != raw_y.size()) {
        throw std::invalid_argument("standardize: X and y row counts differ");
    }
    const Eigen::Index n = raw_X.rows();
    const Eigen::Index p = raw_X.cols();
    if (n < 2 || p < 1) {
        throw std::invalid_argument("standardize: need n >= 2 and p >= 1");
    }

    StandardizeResult out;
    out.centered = center;
    out.center = center ? Eigen::VectorXd(raw_X.colwise().mean())
                        : Eigen::VectorXd::Zero(p);
    out.scale.resize(p);
    out.data.X.resize(n, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        Eigen::VectorXd col = raw_X.col(j).array() - out.center(j);
        const double norm2 = col.squaredNorm();
        if (norm2 <= 1e-12 * static_cast<double>(n)) {
            std::ostringstream msg;
            msg << "standardize: column " << j << " has zero variance";
            throw std::invalid_argument(msg.str());
        }
        out.scale(j) = std::sqrt(static_cast<double>(n) / norm2);
        out.data.X.col(j) = col * out.scale(j);
    }
    out.data.y = raw_y;
    out.data.n = n;
    out.data.p = p;
    return out;
}

OlsSolution ols_solve(const Dataset& d) {
    if (d.n < d.p) {
        // A thin SVD of a wide design carries only n singular values, so the
        // gram rank deficiency would slip past the conditioning check below.
        throw std::runtime_error("ols_solve: underdetermined system (n < p)");
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d.X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    // Gram singular values are the squares of the design's.
    const double gmax = sv(0) * sv(0);
    const double gmin = sv(sv.size() - 1) * sv(sv.size() - 1);
    if (!(gmin > 0.0) || gmax / gmin > 1e12) {
        std::ostringstream msg;
        msg << "ols_solve: gram matrix is numerically singular (smallest singular value "
            << gmin << ")";
        throw std::runtime_error(msg.str());
    }
    OlsSolution out;
    out.smin = gmin;
    out.smax = gmax;
    Eigen::VectorXd inv_sv = sv.array().inverse();
    out.theta = svd.matrixV() * (inv_sv.array() * (svd.matrixU().transpose() * d.y).array()).matrix();
    out.gram_inv = svd.matrixV() * inv_sv.array().square().matrix().asDiagonal() *
                   svd.matrixV().transpose();
    return out;
}

Eigen::VectorXd ols_fit(const Dataset& d) { return ols_solve(d).theta; }

double sigma_lambda0(Eigen::Index n, Eigen::Index p, SigmaRule rule) {
    if (rule == SigmaRule::ScaledLassoUniversal) {
        return std::sqrt(2.0 * std::log(static_cast<double>(p)) / static_cast<double>(n));
    }
    if (rule == SigmaRule::ScaledLassoQuantile) {
        double L = 0.1, Lold = 0.0;
        while (std::fabs(L - Lold) > 0.001) {
            const double k = L * L * L * L + 2.0 * L * L;
            Lold = L;
            L = -norm_quantile(std::min(k / static_cast<double>(p), 0.99));
            L = 0.5 * (L + Lold);
        }
        if (p == 1) L = 0.5;
        return std::sqrt(2.0 / static_cast<double>(n)) * L;
    }
    throw std::invalid_argument("sigma_lambda0: rule has no penalty level");
}

SigmaEstimate estimate_sigma(const Dataset& d, SigmaRule rule) {
    SigmaEstimate out;
    out.rule = rule;

    if (rule == SigmaRule::OlsResidual) {
        if (d.n <= d.p + 1) {
            throw std::invalid_argument("estimate_sigma: OLS residual rule needs n > p + 1");
        }
        const Eigen::VectorXd theta = ols_fit(d);
        const double rss = (d.y - d.X * theta).squaredNorm();
        out.value = std::sqrt(rss / static_cast<double>(d.n - d.p));
        return out;
    }

    const double lam0 = sigma_lambda0(d.n, d.p, rule);
    const Eigen::MatrixXd gram = d.X.transpose() * d.X;
    const Eigen::VectorXd xty = d.X.transpose() * d.y;
    const Eigen::VectorXd weights = Eigen::VectorXd::Ones(d.p);

    double sigma = std::sqrt(d.y.squaredNorm() / static_cast<double>(d.n));
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(d.p);
    out.converged = false;
    for (int it = 1; it <= 100; ++it) {
        out.iterations = it;
        theta = weighted_lasso_cd(gram, xty, d.n, sigma * lam0, weights, theta);
        const double rss = (d.y - d.X * theta).squaredNorm();
        const double s_new = std::sqrt(rss / static_cast<double>(d.n));
        const bool done = std::fabs(s_new - sigma) < 1e-6;
        sigma = s_new;
        if (done) {
            out.converged = true;
            break;
        }
    }
    out.value = sigma;
    return out;
}

}  // namespace weaksig
