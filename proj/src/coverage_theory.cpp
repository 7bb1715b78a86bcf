#include "weaksig/coverage_theory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "weaksig/normal.hpp"

namespace weaksig {

namespace {

double root_n(const TheoryConfig& cfg) { return std::sqrt(static_cast<double>(cfg.n)); }

// Bisection for a monotone-increasing residual f on [lo, hi] with f(lo) <= 0 <= f(hi).
template <typename F>
double bisect(F f, double lo, double hi, const char* label) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo > 0.0 || fhi < 0.0) {
        std::ostringstream msg;
        msg << "boundary_points: bracket failure for " << label << " on [" << lo << ", " << hi
            << "] with residuals (" << flo << ", " << fhi << ")";
        throw std::runtime_error(msg.str());
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * (1.0 + std::fabs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double sigma_tilde(double theta, const TheoryConfig& cfg) {
    const double th = std::fabs(theta);
    if (th == 0.0) return 0.0;
    return cfg.sigma / (1.0 + cfg.lambda / (th * th));
}

double p_s(double theta, double nu, const TheoryConfig& cfg) {
    const double rn = root_n(cfg);
    return norm_cdf((theta - nu) * rn / cfg.sigma) + norm_cdf((-theta - nu) * rn / cfg.sigma);
}

double cr_a(double theta, double nu, const TheoryConfig& cfg) {
    const double th = std::fabs(theta);
    const double z = z_alpha(cfg);
    const double st = sigma_tilde(th, cfg);
    const double halfw = z * st / root_n(cfg);
    if (th <= std::fabs(nu - halfw)) {
        if (nu <= halfw) {
            return p_s(th, nu, cfg) - 2.0 * norm_cdf(-z * st / cfg.sigma);
        }
        return 0.0;
    }
    if (th <= nu + halfw) {
        return norm_cdf(z * st / cfg.sigma) - norm_cdf(root_n(cfg) * (nu - th) / cfg.sigma);
    }
    return 1.0 - 2.0 * norm_cdf(-z * st / cfg.sigma);
}

double cr_b(double theta, double nu, const TheoryConfig& cfg) {
    const double th = std::fabs(theta);
    const double z = z_alpha(cfg);
    const double halfw = z * cfg.sigma / root_n(cfg);
    if (th <= std::fabs(nu - halfw)) {
        if (nu <= halfw) {
            return p_s(th, nu, cfg) - cfg.alpha;
        }
        return 0.0;
    }
    if (th <= nu + halfw) {
        return 1.0 - cfg.alpha / 2.0 - norm_cdf(root_n(cfg) * (nu - th) / cfg.sigma);
    }
    return 1.0 - cfg.alpha;
}

double cr1(double theta, const TheoryConfig& cfg) {
    const double nu0 = std::sqrt(cfg.lambda);
    const double ps = p_s(theta, nu0, cfg);
    if (!(ps > 0.0)) {
        throw std::runtime_error("cr1: selection probability is not positive");
    }
    return cr_a(theta, nu0, cfg) / ps;
}

double cr_two_step(double theta, const TheoryConfig& cfg) {
    const double nu1 = nu1_threshold(cfg);
    const double nu2 = nu2_threshold(cfg);
    const double ps = p_s(theta, nu1, cfg);
    if (!(ps > 0.0)) {
        throw std::runtime_error("cr_two_step: selection probability is not positive");
    }
    return (cr_b(theta, nu1, cfg) + cr_a(theta, nu2, cfg) - cr_b(theta, nu2, cfg)) / ps;
}

CoverageCurve coverage_curve(const Eigen::VectorXd& thetas, const TheoryConfig& cfg) {
    CoverageCurve out;
    out.thetas = thetas;
    out.cr1.resize(thetas.size());
    out.cr.resize(thetas.size());
    out.delta.resize(thetas.size());
    for (Eigen::Index i = 0; i < thetas.size(); ++i) {
        out.cr1(i) = cr1(thetas(i), cfg);
        out.cr(i) = cr_two_step(thetas(i), cfg);
        out.delta(i) = out.cr(i) - out.cr1(i);
    }
    return out;
}

BoundaryPoints boundary_points(const TheoryConfig& cfg) {
    if (!check_config(cfg).lambda_criterion) {
        throw std::invalid_argument(
            "boundary_points: requires sqrt(lambda) >= z_{alpha/2} sigma / sqrt(n)");
    }
    const double z = z_alpha(cfg);
    const double zt = z_tau(cfg);
    const double rn = root_n(cfg);
    const double se = cfg.sigma / rn;
    const double nu0 = std::sqrt(cfg.lambda);

    BoundaryPoints bp;
    bp.nu0 = nu0;
    bp.nu1 = zt * se;
    bp.nu2 = nu0 + z * se;
    bp.nu3 = (z + zt) * se;
    bp.nu4 = nu0 + 2.0 * z * se;

    const auto st = [&](double th) { return sigma_tilde(th, cfg); };
    // Each residual is increasing in theta on its bracket.
    bp.c1 = bisect([&](double t) { return t - (nu0 - z * st(t) / rn); }, 1e-14, nu0, "c1");
    bp.c2 = bisect([&](double t) { return t - (nu0 + z * st(t) / rn); }, nu0,
                   nu0 + z * se + 1e-9, "c2");
    bp.c3 = bisect([&](double t) { return t - (nu0 + z * se - z * st(t) / rn); }, 1e-14,
                   nu0 + z * se, "c3");
    bp.c4 = bisect([&](double t) { return t - (nu0 + z * se + z * st(t) / rn); }, nu0 + z * se,
                   nu0 + 2.0 * z * se + 1e-9, "c4");
    return bp;
}

BoundResult theorem_bounds(double theta, const TheoryConfig& cfg, const BoundaryPoints& bp) {
    const ConfigCheck chk = check_config(cfg);
    if (!chk.all()) {
        throw std::invalid_argument("theorem_bounds: config violates (C1)/(C2) or the lambda criterion");
    }
    const double z = z_alpha(cfg);
    const double th = std::fabs(theta);
    const double a = cfg.alpha;
    const auto P = [](double x) { return norm_cdf(x); };

    const bool regime2 = bp.nu0 >= bp.nu3;
    if (!regime2) {
        // sqrt(lambda) below (z_{alpha/2} + z_{tau/2}) sigma / sqrt(n).
        const int case_label = (bp.c3 < bp.nu3 && bp.nu3 < bp.c2) ? 1
                               : (bp.c2 <= bp.nu3)                ? 2
                                                                  : 3;
        if (th <= bp.c1) return {1.0 - a / cfg.tau, "[0,c1]", case_label};
        if (th <= bp.nu0) return {2.0 / (1.0 + a) - 2.0 * P(0.5 * z), "[c1,nu0]", case_label};
        if (th <= std::min(bp.nu3, bp.c3)) {
            return {-4.0 * (1.0 - a / 2.0) * P(-1.5 * z), "[nu0,min(nu3,c3)]", case_label};
        }
        if (case_label == 1) {
            if (th <= bp.nu3) return {-2.0 * P(-1.5 * z), "[c3,nu3]", case_label};
            if (th <= bp.c2) {
                return {-4.0 * (1.0 - a) / ((2.0 - a) * (2.0 - a)) * P(-2.0 * z) -
                            a * (1.0 - a) / (2.0 - a),
                        "[nu3,c2]", case_label};
            }
        } else if (case_label == 2) {
            if (th <= bp.c2) return {-2.0 * (1.0 - a) * P(-1.5 * z), "[c3,c2]", case_label};
            if (th <= bp.nu3) {
                return {-(1.0 - a) / (P(0.5 * z) * P(0.5 * z)) * P(-2.0 * z), "[c2,nu3]",
                        case_label};
            }
        } else {
            if (th <= bp.c2) return {-a / 2.0, "[nu3,c2]", case_label};
        }
        if (th <= bp.c4) {
            return {-4.0 * (1.0 - a) / ((2.0 - a) * (2.0 - a)) * P(-2.0 * z) -
                        a * (1.0 - a) / (2.0 - a),
                    "[max(nu3,c2),c4]", case_label};
        }
        if (th <= bp.nu4) {
            return {-(1.0 - a) * P(-1.5 * z) / (P(1.5 * z) * P(1.5 * z)), "[c4,nu4]", case_label};
        }
        return {-(1.0 - a) * P(-2.0 * z) / (P(2.0 * z) * P(2.0 * z)), "[nu4,inf)", case_label};
    }

    // sqrt(lambda) at or above (z_{alpha/2} + z_{tau/2}) sigma / sqrt(n).
    const int case_label = bp.nu3 < bp.c1 ? 4 : 5;
    if (th <= std::min(bp.nu3, bp.c1)) return {1.0 - a / cfg.tau, "[0,min(nu3,c1)]", case_label};
    if (case_label == 4) {
        if (th <= bp.nu0) return {2.0 - a - 2.0 * P(0.5 * z), "[nu3,nu0]", case_label};
    } else {
        if (th <= bp.nu3) return {P(-0.5 * z) - a / 2.0, "[c1,nu3]", case_label};
        if (th <= bp.nu0) return {2.0 - a - 2.0 * P(0.5 * z), "[nu3,nu0]", case_label};
    }
    return {-a / 2.0, "[nu0,inf)", case_label};
}

}  // namespace weaksig
