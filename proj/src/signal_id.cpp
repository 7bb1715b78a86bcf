#include "weaksig/signal_id.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "weaksig/normal.hpp"

namespace weaksig {

double z_alpha(const TheoryConfig& cfg) { return norm_quantile(1.0 - cfg.alpha / 2.0); }
double z_tau(const TheoryConfig& cfg) { return norm_quantile(1.0 - cfg.tau / 2.0); }

ConfigCheck check_config(const TheoryConfig& cfg) {
    ConfigCheck out;
    const double z = z_alpha(cfg);
    out.c1 = cfg.tau >= cfg.alpha;
    out.c2 = cfg.tau < 2.0 * norm_cdf(-0.5 * z) - cfg.alpha;
    out.lambda_criterion =
        std::sqrt(cfg.lambda) >= z * cfg.sigma / std::sqrt(static_cast<double>(cfg.n));
    return out;
}

double tau0(const TheoryConfig& cfg) {
    return 2.0 * norm_cdf(-std::sqrt(static_cast<double>(cfg.n) * cfg.lambda) / cfg.sigma);
}

double detection_prob(double theta, const TheoryConfig& cfg) {
    const double rn = std::sqrt(static_cast<double>(cfg.n));
    const double root_lam = std::sqrt(cfg.lambda);
    return norm_cdf((theta - root_lam) * rn / cfg.sigma) +
           norm_cdf((-theta - root_lam) * rn / cfg.sigma);
}

double estimated_detection_prob(double theta_ls, const TheoryConfig& cfg) {
    return detection_prob(theta_ls, cfg);
}

double expected_detection_prob(double theta, const TheoryConfig& cfg) {
    const double rn = std::sqrt(static_cast<double>(cfg.n));
    const double root_lam = std::sqrt(cfg.lambda);
    const double s = std::sqrt(2.0) * cfg.sigma;
    return norm_cdf(rn * (theta - root_lam) / s) - norm_cdf(-rn * (theta + root_lam) / s);
}

double nu_for_gamma(double gamma, const TheoryConfig& cfg) {
    const double floor = tau0(cfg);
    if (gamma <= floor) {
        std::ostringstream msg;
        msg << "nu_for_gamma: no positive root for gamma <= tau0 = " << floor;
        throw std::domain_error(msg.str());
    }
    if (!(gamma < 1.0)) {
        throw std::domain_error("nu_for_gamma: gamma must be below 1");
    }
    // detection_prob is strictly increasing in theta >= 0, so bracket and
    // bisect. The initial upper end covers any gamma < 1 at practical scales;
    // doubling guards the rest.
    double lo = 0.0;
    double hi = std::sqrt(cfg.lambda) + 10.0 * cfg.sigma / std::sqrt(static_cast<double>(cfg.n));
    while (detection_prob(hi, cfg) < gamma) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (detection_prob(mid, cfg) < gamma) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double nu1_threshold(const TheoryConfig& cfg) {
    return z_tau(cfg) * cfg.sigma / std::sqrt(static_cast<double>(cfg.n));
}

double nu2_threshold(const TheoryConfig& cfg) {
    return std::sqrt(cfg.lambda) + z_alpha(cfg) * cfg.sigma / std::sqrt(static_cast<double>(cfg.n));
}

SignalClass classify_one(double theta_ls, double nu1, double nu2) {
    const double a = std::fabs(theta_ls);
    if (a <= nu1) return SignalClass::Noise;
    if (a <= nu2) return SignalClass::Weak;
    return SignalClass::Strong;
}

SignalClassification classify(const FitResult& fit, const TheoryConfig& cfg) {
    SignalClassification out;
    out.nu1 = nu1_threshold(cfg);
    out.nu2 = nu2_threshold(cfg);
    if (out.nu1 >= out.nu2) {
        throw std::invalid_argument("classify: nu1 >= nu2; configuration violates (C1)/(C2)");
    }
    out.gamma1 = detection_prob(out.nu1, cfg);
    out.gamma2 = detection_prob(out.nu2, cfg);
    for (Eigen::Index i = 0; i < fit.theta_ls.size(); ++i) {
        switch (classify_one(fit.theta_ls(i), out.nu1, out.nu2)) {
            case SignalClass::Noise:
                out.noise_set.push_back(static_cast<int>(i));
                break;
            case SignalClass::Weak:
                out.weak_set.push_back(static_cast<int>(i));
                break;
            case SignalClass::Strong:
                out.strong_set.push_back(static_cast<int>(i));
                break;
        }
    }
    return out;
}

}  // namespace weaksig
