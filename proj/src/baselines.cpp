#include "weaksig/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "weaksig/adaptive_lasso.hpp"
#include "weaksig/normal.hpp"
#include "weaksig/rng.hpp"

namespace weaksig {

IntervalReport ols_interval(const Dataset& d, double sigma_hat, double alpha, int index) {
    if (index < 0 || index >= d.p) throw std::invalid_argument("ols_interval: index out of range");
    const OlsSolution ols = ols_solve(d);
    IntervalReport rep;
    rep.index = index;
    rep.rule = IntervalRule::LeastSquare;
    rep.center = ols.theta(index);
    rep.se = sigma_hat * std::sqrt(ols.gram_inv(index, index));
    rep.half_width = norm_quantile(1.0 - alpha / 2.0) * rep.se;
    rep.bias = 0.0;
    rep.alpha = alpha;
    return rep;
}

std::pair<double, double> percentile_endpoints(std::vector<double> values, double alpha) {
    if (values.empty()) throw std::invalid_argument("percentile_endpoints: no values");
    std::sort(values.begin(), values.end());
    const double b = static_cast<double>(values.size());
    auto order_stat = [&](double q) {
        auto k = static_cast<std::size_t>(std::ceil(b * q));
        k = std::clamp<std::size_t>(k, 1, values.size());
        return values[k - 1];
    };
    return {order_stat(alpha / 2.0), order_stat(1.0 - alpha / 2.0)};
}

namespace {

// One resample fit on the gram system: rescale columns to gram diagonal n,
// least squares by LDLT, adaptive-Lasso weights, coordinate descent at the
// fixed lambda. Returns the coefficient mapped back to the input column
// scale. Throws on a degenerate resample.
double resample_coefficient(const Eigen::MatrixXd& Xb, const Eigen::VectorXd& yb, double lambda,
                            int index) {
    const Eigen::Index n = Xb.rows();
    const Eigen::Index p = Xb.cols();
    Eigen::MatrixXd gram = Xb.transpose() * Xb;
    Eigen::VectorXd xty = Xb.transpose() * yb;

    Eigen::VectorXd scale(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double g = gram(j, j);
        if (g <= 1e-12 * static_cast<double>(n)) {
            throw std::runtime_error("resample column is identically zero");
        }
        scale(j) = std::sqrt(static_cast<double>(n) / g);
    }
    gram = scale.asDiagonal() * gram * scale.asDiagonal();
    xty = scale.asDiagonal() * xty;

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success) throw std::runtime_error("resample gram not factorable");
    const Eigen::VectorXd diag = ldlt.vectorD();
    if (diag.minCoeff() <= 1e-12 * diag.maxCoeff()) {
        throw std::runtime_error("resample gram numerically singular");
    }
    const Eigen::VectorXd theta_ls = ldlt.solve(xty);

    Eigen::VectorXd weights(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        weights(j) = theta_ls(j) == 0.0 ? std::numeric_limits<double>::infinity()
                                        : 1.0 / std::abs(theta_ls(j));
    }
    const Eigen::VectorXd theta =
        weighted_lasso_cd(gram, xty, n, lambda, weights, Eigen::VectorXd::Zero(p));
    return theta(index) * scale(index);
}

}  // namespace

BootstrapOutcome bootstrap_interval(const Dataset& d, double lambda,
                                    const BootstrapConfig& cfg, double alpha, int index) {
    if (cfg.replications < 100) {
        throw std::invalid_argument("bootstrap_interval: replications must be >= 100");
    }
    if (index < 0 || index >= d.p) {
        throw std::invalid_argument("bootstrap_interval: index out of range");
    }

    BootstrapOutcome out;
    std::vector<double> values;
    values.reserve(cfg.replications);
    Eigen::MatrixXd Xb(d.n, d.p);
    Eigen::VectorXd yb(d.n);

    for (int b = 0; b < cfg.replications; ++b) {
        RngStream rows(cfg.seed, static_cast<std::uint64_t>(b), purpose::kBootstrap);
        bool ok = false;
        for (int attempt = 0; attempt < 50 && !ok; ++attempt) {
            for (Eigen::Index r = 0; r < d.n; ++r) {
                const auto pick = static_cast<Eigen::Index>(rows.next_u64() % d.n);
                Xb.row(r) = d.X.row(pick);
                yb(r) = d.y(pick);
            }
            try {
                values.push_back(resample_coefficient(Xb, yb, lambda, index));
                ok = true;
            } catch (const std::exception&) {
                // degenerate resample; redraw
            }
        }
        if (!ok) ++out.dropped;
    }
    if (values.empty()) {
        throw std::runtime_error("bootstrap_interval: every resample was degenerate");
    }
    out.used = static_cast<int>(values.size());
    auto ends = percentile_endpoints(std::move(values), alpha);
    out.lower = ends.first;
    out.upper = ends.second;
    return out;
}

}  // namespace weaksig
