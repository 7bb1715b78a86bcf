#include "weaksig/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "weaksig/adaptive_lasso.hpp"
#include "weaksig/baselines.hpp"
#include "weaksig/kernels.hpp"
#include "weaksig/normal.hpp"
#include "weaksig/rng.hpp"
#include "weaksig/two_step.hpp"

namespace weaksig {

namespace {

// Method slots in the per-replicate record.
enum : int { kTwoStep = 0, kAsymptotic = 1, kOls = 2, kBootstrap = 3, kMethodCount = 4 };

const char* method_name(int m) {
    switch (m) {
        case kTwoStep: return "two_step";
        case kAsymptotic: return "asymptotic";
        case kOls: return "ols";
        default: return "bootstrap";
    }
}

struct ReplicateOutcome {
    bool dropped = false;
    bool strong_zeroed = false;
    int category = -1;  // 0 noise, 1 weak, 2 strong
    long fp_num = 0;
    long fp_den = 0;
    std::array<bool, kMethodCount> counted{};
    std::array<bool, kMethodCount> covered{};
    std::array<double, kMethodCount> width{};
};

void validate_scenario(const SimulationScenario& sc) {
    if (sc.n < 2 || sc.p < 1) throw std::invalid_argument("scenario: need n >= 2 and p >= 1");
    if (sc.theta_star.size() != sc.p) {
        throw std::invalid_argument("scenario: theta_star length must equal p");
    }
    if (sc.theta_varying_index < 0 || sc.theta_varying_index >= sc.p) {
        throw std::invalid_argument("scenario: theta_varying_index out of range");
    }
    if (sc.rho < 0.0 || sc.rho >= 1.0) throw std::invalid_argument("scenario: rho must be in [0, 1)");
    if (sc.sigma <= 0.0) throw std::invalid_argument("scenario: sigma must be positive");
    if (sc.replications < 1) throw std::invalid_argument("scenario: replications must be >= 1");
    if (sc.alpha <= 0.0 || sc.alpha >= 0.5 || sc.tau <= 0.0 || sc.tau >= 0.5) {
        throw std::invalid_argument("scenario: alpha and tau must lie in (0, 0.5)");
    }
    if (sc.exact_orthogonalize && sc.p > sc.n) {
        throw std::invalid_argument("scenario: orthogonalization needs p <= n");
    }
}

void orthogonalize_columns(Eigen::MatrixXd& X) {
    // Modified Gram-Schmidt; the standardize() call afterwards restores the
    // column norms.
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        for (Eigen::Index k = 0; k < j; ++k) {
            X.col(j) -= X.col(k).dot(X.col(j)) / X.col(k).squaredNorm() * X.col(k);
        }
        const double norm = X.col(j).norm();
        if (norm < 1e-12) throw std::runtime_error("orthogonalization produced a zero column");
    }
}

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

ReplicateOutcome run_one(const SimulationScenario& sc, long rep_id) {
    ReplicateOutcome out;
    try {
        const Dataset d = generate_dataset(sc, rep_id);
        const OlsSolution ols = ols_solve(d);
        const double sigma_hat =
            sc.known_sigma ? sc.sigma : estimate_sigma(d, sc.sigma_rule).value;
        double lambda = sc.fixed_lambda;
        if (lambda < 0.0) {
            const TuningGrid grid = bic_select(d, sigma_hat);
            lambda = grid.lambdas(grid.selected_index);
        }
        const FitResult fit = alasso_fit(d, lambda, sigma_hat);

        const double z_t = norm_quantile(1.0 - sc.tau / 2.0);
        const double z_a = norm_quantile(1.0 - sc.alpha / 2.0);
        const double sqrt_lam = std::sqrt(lambda);
        const Eigen::Index v = sc.theta_varying_index;
        const double truth = sc.theta_star(v);

        // Per-coordinate thresholds from the least-squares standard errors.
        auto category_of = [&](Eigen::Index j) {
            const double se = sigma_hat * std::sqrt(ols.gram_inv(j, j));
            const double a = std::abs(fit.theta_ls(j));
            if (a <= z_t * se) return 0;
            if (a <= sqrt_lam + z_a * se) return 1;
            return 2;
        };
        out.category = category_of(v);
        for (Eigen::Index j = 0; j < sc.p; ++j) {
            if (sc.theta_star(j) != 0.0) continue;
            ++out.fp_den;
            if (category_of(j) != 0) ++out.fp_num;
        }

        const double se_ls = sigma_hat * std::sqrt(ols.gram_inv(v, v));
        out.counted[kOls] = true;
        out.covered[kOls] = std::abs(truth - fit.theta_ls(v)) <= z_a * se_ls;
        out.width[kOls] = 2.0 * z_a * se_ls;

        // Corrected-center sandwich interval over the active set, shared by
        // the asymptotic method and the strong branch of the two-step rule.
        bool have_al = false;
        double al_center = 0.0, al_se = 0.0;
        if (fit.theta_al(v) != 0.0) {
            std::vector<int> active;
            for (Eigen::Index j = 0; j < sc.p; ++j) {
                if (fit.theta_al(j) != 0.0) active.push_back(static_cast<int>(j));
            }
            const auto pos = static_cast<Eigen::Index>(
                std::find(active.begin(), active.end(), static_cast<int>(v)) - active.begin());
            const Eigen::VectorXd bias = alasso_bias(fit, active, d);
            const Eigen::MatrixXd cov = alasso_covariance(fit, active, d, /*bias_corrected=*/true);
            al_center = fit.theta_al(v) + bias(pos);
            al_se = std::sqrt(cov(pos, pos));
            have_al = true;
            out.counted[kAsymptotic] = true;
            out.covered[kAsymptotic] = std::abs(truth - al_center) <= z_a * al_se;
            out.width[kAsymptotic] = 2.0 * z_a * al_se;
        }

        if (out.category == 1) {
            out.counted[kTwoStep] = true;
            out.covered[kTwoStep] = out.covered[kOls];
            out.width[kTwoStep] = out.width[kOls];
        } else if (out.category == 2) {
            if (have_al) {
                out.counted[kTwoStep] = true;
                out.covered[kTwoStep] = std::abs(truth - al_center) <= z_a * al_se;
                out.width[kTwoStep] = 2.0 * z_a * al_se;
            } else {
                out.strong_zeroed = true;
            }
        }

        if (sc.with_bootstrap) {
            BootstrapConfig bcfg;
            bcfg.replications = sc.bootstrap_replications;
            bcfg.seed = RngStream(sc.seed, static_cast<std::uint64_t>(rep_id),
                                  purpose::kBootstrap)
                            .next_u64();
            const BootstrapOutcome bo = bootstrap_interval(d, lambda, bcfg, sc.alpha,
                                                           static_cast<int>(v));
            out.counted[kBootstrap] = true;
            out.covered[kBootstrap] = bo.lower <= truth && truth <= bo.upper;
            out.width[kBootstrap] = bo.upper - bo.lower;
        }
    } catch (const std::exception&) {
        out = ReplicateOutcome{};
        out.dropped = true;
    }
    return out;
}

// Runs replicates [0, R) of one theta cell across workers; records keep
// replicate order so the reduction is deterministic regardless of the
// worker count.
std::vector<ReplicateOutcome> run_cell(const SimulationScenario& sc, long rep_base) {
    const int R = sc.replications;
    std::vector<ReplicateOutcome> records(static_cast<std::size_t>(R));
    const int workers = std::min(resolve_workers(sc.workers), R);
    if (workers <= 1) {
        for (int r = 0; r < R; ++r) records[static_cast<std::size_t>(r)] = run_one(sc, rep_base + r);
        return records;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int r = w; r < R; r += workers) {
                records[static_cast<std::size_t>(r)] = run_one(sc, rep_base + r);
            }
        });
    }
    for (auto& t : pool) t.join();
    return records;
}

}  // namespace

Eigen::VectorXd tiered_theta_template(Eigen::Index p) {
    if (p < 4) throw std::invalid_argument("tiered_theta_template: need p >= 4");
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(p);
    theta(0) = 1.0;
    theta(1) = 1.0;
    theta(2) = 0.5;
    return theta;
}

Dataset generate_dataset(const SimulationScenario& sc, long replicate) {
    validate_scenario(sc);
    RngStream design(sc.seed, static_cast<std::uint64_t>(replicate), purpose::kDesign);
    Eigen::MatrixXd X(sc.n, sc.p);
    const double carry = std::sqrt(1.0 - sc.rho * sc.rho);
    for (Eigen::Index i = 0; i < sc.n; ++i) {
        X(i, 0) = design.normal();
        for (Eigen::Index j = 1; j < sc.p; ++j) {
            X(i, j) = sc.rho * X(i, j - 1) + carry * design.normal();
        }
    }
    if (sc.exact_orthogonalize) orthogonalize_columns(X);

    const StandardizeResult std_res = standardize(X, Eigen::VectorXd::Zero(sc.n), false);
    RngStream noise(sc.seed, static_cast<std::uint64_t>(replicate), purpose::kNoise);
    Eigen::VectorXd eps(sc.n);
    for (Eigen::Index i = 0; i < sc.n; ++i) eps(i) = sc.sigma * noise.normal();

    Dataset d = std_res.data;
    d.y = d.X * sc.theta_star + eps;
    return d;
}

AggregateReport run_scenario(const SimulationScenario& sc) {
    validate_scenario(sc);
    std::vector<double> grid = sc.theta_grid;
    if (grid.empty()) grid.push_back(sc.theta_star(sc.theta_varying_index));

    AggregateReport report;
    report.replications = sc.replications;
    const long R = sc.replications;

    for (std::size_t ti = 0; ti < grid.size(); ++ti) {
        SimulationScenario cell = sc;
        cell.theta_star(cell.theta_varying_index) = grid[ti];
        const std::vector<ReplicateOutcome> records =
            run_cell(cell, static_cast<long>(ti) * R);

        long dropped = 0, strong_zeroed = 0, fp_num = 0, fp_den = 0;
        std::array<long, 3> cat_counts{0, 0, 0};
        std::array<long, kMethodCount> counted{};
        std::array<long, kMethodCount> covered{};
        std::array<double, kMethodCount> width_sum{};
        for (const ReplicateOutcome& rec : records) {
            if (rec.dropped) {
                ++dropped;
                continue;
            }
            if (rec.strong_zeroed) ++strong_zeroed;
            ++cat_counts[static_cast<std::size_t>(rec.category)];
            fp_num += rec.fp_num;
            fp_den += rec.fp_den;
            for (int m = 0; m < kMethodCount; ++m) {
                if (!rec.counted[static_cast<std::size_t>(m)]) continue;
                ++counted[static_cast<std::size_t>(m)];
                covered[static_cast<std::size_t>(m)] +=
                    rec.covered[static_cast<std::size_t>(m)] ? 1 : 0;
                width_sum[static_cast<std::size_t>(m)] += rec.width[static_cast<std::size_t>(m)];
            }
        }
        if (10 * dropped > R) {
            std::ostringstream msg;
            msg << "run_scenario: " << dropped << " of " << R
                << " replicates dropped at theta = " << grid[ti];
            throw std::runtime_error(msg.str());
        }
        report.dropped += dropped;
        report.strong_zeroed += strong_zeroed;

        const long kept = R - dropped;
        std::array<double, 3> cat_probs{0.0, 0.0, 0.0};
        if (kept > 0) {
            for (std::size_t c = 0; c < 3; ++c) {
                cat_probs[c] = static_cast<double>(cat_counts[c]) / static_cast<double>(kept);
            }
        }
        const double fp_rate =
            fp_den > 0 ? static_cast<double>(fp_num) / static_cast<double>(fp_den) : 0.0;

        const int n_methods = sc.with_bootstrap ? kMethodCount : kMethodCount - 1;
        for (int m = 0; m < n_methods; ++m) {
            ReportRow row;
            row.theta = grid[ti];
            row.method = method_name(m);
            row.counted = counted[static_cast<std::size_t>(m)];
            if (row.counted > 0) {
                const double mc = static_cast<double>(row.counted);
                row.coverage = static_cast<double>(covered[static_cast<std::size_t>(m)]) / mc;
                row.mean_width = width_sum[static_cast<std::size_t>(m)] / mc;
                row.mc_stderr = std::sqrt(row.coverage * (1.0 - row.coverage) / mc);
            }
            row.fp_rate = fp_rate;
            row.category_probs = cat_probs;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

OracleRun orthogonal_oracle_run(const TheoryConfig& cfg, const std::vector<double>& theta_grid,
                                long draws, std::uint64_t seed) {
    if (draws < 100000) throw std::invalid_argument("orthogonal_oracle_run: draws must be >= 1e5");
    if (theta_grid.empty()) throw std::invalid_argument("orthogonal_oracle_run: empty theta grid");

    OracleRun run;
    const Eigen::Map<const Eigen::VectorXd> thetas(theta_grid.data(),
                                                   static_cast<Eigen::Index>(theta_grid.size()));
    run.formula = coverage_curve(thetas, cfg);
    run.empirical_cr1.resize(theta_grid.size());
    run.empirical_cr.resize(theta_grid.size());

    // One shared buffer of standard normals, reused across the grid so the
    // empirical curves vary smoothly in theta.
    std::vector<double> z(static_cast<std::size_t>(draws));
    RngStream stream(seed, 0, purpose::kOracle);
    for (double& zi : z) zi = stream.normal();

    const double root_n = std::sqrt(static_cast<double>(cfg.n));
    const double scale = cfg.sigma / root_n;
    const double z_a = norm_quantile(1.0 - cfg.alpha / 2.0);
    const double nu0 = std::sqrt(cfg.lambda);
    const double nu1 = nu1_threshold(cfg);
    const double nu2 = nu2_threshold(cfg);

    std::vector<double> est(static_cast<std::size_t>(draws));
    for (std::size_t g = 0; g < theta_grid.size(); ++g) {
        const double theta = theta_grid[g];
        for (std::size_t i = 0; i < est.size(); ++i) est[i] = theta + scale * z[i];

        const double r_formula = z_a * sigma_tilde(theta, cfg) / root_n;
        const double r_ls = z_a * scale;

        std::uint64_t sel0 = 0, sel1 = 0, sel2 = 0;
        const std::uint64_t cova_sel0 =
            kernels::count_joint(est.data(), est.size(), nu0, theta, r_formula, sel0);
        const std::uint64_t covb_sel1 =
            kernels::count_joint(est.data(), est.size(), nu1, theta, r_ls, sel1);
        const std::uint64_t covb_sel2 =
            kernels::count_joint(est.data(), est.size(), nu2, theta, r_ls, sel2);
        std::uint64_t sel2b = 0;
        const std::uint64_t cova_sel2 =
            kernels::count_joint(est.data(), est.size(), nu2, theta, r_formula, sel2b);

        run.empirical_cr1[g] =
            sel0 > 0 ? static_cast<double>(cova_sel0) / static_cast<double>(sel0) : 0.0;
        run.empirical_cr[g] =
            sel1 > 0 ? (static_cast<double>(covb_sel1) - static_cast<double>(covb_sel2) +
                        static_cast<double>(cova_sel2)) /
                           static_cast<double>(sel1)
                     : 0.0;
    }
    return run;
}

AggregateReport category_probability_sweep(const SimulationScenario& sc,
                                           const std::vector<double>& theta_grid) {
    SimulationScenario sweep = sc;
    sweep.theta_grid = theta_grid;
    sweep.with_bootstrap = false;
    const AggregateReport full = run_scenario(sweep);

    AggregateReport out;
    out.replications = full.replications;
    out.dropped = full.dropped;
    out.strong_zeroed = full.strong_zeroed;
    for (const ReportRow& row : full.rows) {
        if (row.method != "two_step") continue;
        ReportRow cat = row;
        cat.method = "category";
        cat.counted = 0;
        cat.coverage = 0.0;
        cat.mean_width = 0.0;
        cat.mc_stderr = 0.0;
        out.rows.push_back(std::move(cat));
    }
    return out;
}

}  // namespace weaksig
