#include "weaksig/two_step.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "weaksig/normal.hpp"

namespace weaksig {

namespace {

Eigen::MatrixXd active_columns(const Dataset& d, const std::vector<int>& active) {
    Eigen::MatrixXd Xa(d.n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) {
        Xa.col(static_cast<Eigen::Index>(k)) = d.X.col(active[k]);
    }
    return Xa;
}

void check_active(const FitResult& fit, const std::vector<int>& active) {
    for (int i : active) {
        if (i < 0 || i >= fit.theta_al.size()) {
            throw std::invalid_argument("active index out of range");
        }
        if (fit.theta_al(i) == 0.0) {
            std::ostringstream msg;
            msg << "active coefficient " << i << " is zero in the adaptive-Lasso fit";
            throw std::invalid_argument(msg.str());
        }
        if (fit.theta_ls(i) == 0.0) {
            std::ostringstream msg;
            msg << "active coefficient " << i << " has zero least-squares estimate";
            throw std::invalid_argument(msg.str());
        }
    }
}

}  // namespace

Eigen::VectorXd alasso_bias(const FitResult& fit, const std::vector<int>& active,
                            const Dataset& d) {
    check_active(fit, active);
    const Eigen::Index m = static_cast<Eigen::Index>(active.size());
    if (m == 0) return Eigen::VectorXd();
    Eigen::VectorXd kappa(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const int i = active[k];
        const double sgn = fit.theta_al(i) > 0.0 ? 1.0 : -1.0;
        kappa(k) = fit.lambda * sgn / std::fabs(fit.theta_ls(i));
    }
    const Eigen::MatrixXd Xa = active_columns(d, active);
    const Eigen::MatrixXd Ga = Xa.transpose() * Xa / static_cast<double>(d.n);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Ga);
    if (ldlt.info() != Eigen::Success) {
        throw std::runtime_error("alasso_bias: active gram matrix is singular");
    }
    return ldlt.solve(kappa);
}

Eigen::MatrixXd alasso_covariance(const FitResult& fit, const std::vector<int>& active,
                                  const Dataset& d, bool bias_corrected) {
    check_active(fit, active);
    const Eigen::Index m = static_cast<Eigen::Index>(active.size());
    if (m == 0) return Eigen::MatrixXd();
    const Eigen::MatrixXd Xa = active_columns(d, active);
    const Eigen::MatrixXd Ga = Xa.transpose() * Xa;

    Eigen::VectorXd centers(m);
    for (Eigen::Index k = 0; k < m; ++k) centers(k) = fit.theta_al(active[k]);
    if (bias_corrected) centers += alasso_bias(fit, active, d);

    Eigen::MatrixXd bracket = Ga;
    for (Eigen::Index k = 0; k < m; ++k) {
        const int i = active[k];
        bracket(k, k) += static_cast<double>(d.n) * fit.lambda /
                         (std::fabs(centers(k)) * std::fabs(fit.theta_ls(i)));
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(bracket);
    if (!lu.isInvertible()) {
        throw std::runtime_error("alasso_covariance: bracket matrix is singular");
    }
    const Eigen::MatrixXd inv = lu.inverse();
    return inv * Ga * inv * (fit.sigma_hat * fit.sigma_hat);
}

std::vector<IntervalReport> build_intervals(const FitResult& fit,
                                            const SignalClassification& cls,
                                            const TheoryConfig& cfg, const Dataset& d) {
    std::vector<IntervalReport> out;
    const double z = z_alpha(cfg);

    if (!cls.strong_set.empty()) {
        // The asymptotic machinery applies to the selected model, so the
        // active set is the nonzero set of the adaptive-Lasso fit.
        std::vector<int> active;
        for (Eigen::Index i = 0; i < fit.theta_al.size(); ++i) {
            if (fit.theta_al(i) != 0.0) active.push_back(static_cast<int>(i));
        }
        const Eigen::VectorXd bias = alasso_bias(fit, active, d);
        const Eigen::MatrixXd cov = alasso_covariance(fit, active, d, /*bias_corrected=*/true);
        for (int i : cls.strong_set) {
            const auto it = std::find(active.begin(), active.end(), i);
            if (it == active.end()) {
                std::ostringstream msg;
                msg << "build_intervals: strong coefficient " << i
                    << " is zero in the adaptive-Lasso fit";
                throw std::invalid_argument(msg.str());
            }
            const Eigen::Index k = it - active.begin();
            IntervalReport rep;
            rep.index = i;
            rep.rule = IntervalRule::Asymptotic;
            rep.bias = bias(k);
            rep.center = fit.theta_al(i) + bias(k);
            rep.se = std::sqrt(cov(k, k));
            rep.half_width = z * rep.se;
            rep.alpha = cfg.alpha;
            out.push_back(rep);
        }
    }

    if (!cls.weak_set.empty()) {
        const OlsSolution ols = ols_solve(d);
        for (int i : cls.weak_set) {
            IntervalReport rep;
            rep.index = i;
            rep.rule = IntervalRule::LeastSquare;
            rep.bias = 0.0;
            rep.center = fit.theta_ls(i);
            rep.se = fit.sigma_hat * std::sqrt(ols.gram_inv(i, i));
            rep.half_width = z * rep.se;
            rep.alpha = cfg.alpha;
            out.push_back(rep);
        }
    }

    std::sort(out.begin(), out.end(),
              [](const IntervalReport& a, const IntervalReport& b) { return a.index < b.index; });
    return out;
}

}  // namespace weaksig
