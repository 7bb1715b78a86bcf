#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "weaksig/core_model.hpp"
#include "weaksig/coverage_theory.hpp"
#include "weaksig/signal_id.hpp"

namespace weaksig {

// Monte Carlo experiment description. The design is AR(1)-correlated,
// column-standardized Gaussian; one coefficient (theta_varying_index) is
// swept over theta_grid while the rest stay at theta_star.
struct SimulationScenario {
    Eigen::Index n = 100;
    Eigen::Index p = 20;
    double sigma = 2.0;
    double rho = 0.0;  // AR(1) parameter, in [0, 1)
    Eigen::VectorXd theta_star;
    Eigen::Index theta_varying_index = 3;
    std::vector<double> theta_grid;
    int replications = 400;
    double tau = 0.2;
    double alpha = 0.05;
    std::uint64_t seed = 42;

    // Estimation knobs. The defaults reproduce the fully data-driven
    // pipeline; the overrides exist for oracle-convergence checks.
    SigmaRule sigma_rule = SigmaRule::ScaledLassoUniversal;
    bool known_sigma = false;      // skip estimate_sigma, use sigma as-is
    double fixed_lambda = -1.0;    // >= 0 skips BIC selection
    bool exact_orthogonalize = false;
    bool with_bootstrap = false;
    int bootstrap_replications = 4000;
    int workers = 0;  // <= 0 picks hardware concurrency
};

// The (1, 1, 0.5, 0, ..., 0) coefficient template; slot 3 is the one the
// grid sweeps.
Eigen::VectorXd tiered_theta_template(Eigen::Index p);

// One aggregate row per (theta, method). category_probs is the empirical
// (noise, weak, strong) membership distribution of the varying coefficient.
struct ReportRow {
    double theta = 0.0;
    std::string method;  // "two_step", "asymptotic", "ols", "bootstrap", "category"
    long counted = 0;    // replicates contributing to this row's coverage
    double coverage = 0.0;
    double mean_width = 0.0;
    double mc_stderr = 0.0;
    double fp_rate = 0.0;
    std::array<double, 3> category_probs{0.0, 0.0, 0.0};
};

struct AggregateReport {
    std::vector<ReportRow> rows;
    int replications = 0;     // per theta cell
    long dropped = 0;         // singular replicates, all cells
    long strong_zeroed = 0;   // strong-classified but zeroed by the fit
};

// Draws one dataset: rows i.i.d. with cov(X_i, X_j) = rho^|i-j| via the
// AR(1) recursion, columns scaled to squared norm n (no centering),
// y = X theta* + sigma N(0, I). Bit-identical for identical
// (scenario, replicate).
Dataset generate_dataset(const SimulationScenario& sc, long replicate);

// Full pipeline per replicate: OLS, sigma estimate, BIC-tuned adaptive
// Lasso, per-coefficient signal classification, then two-step / asymptotic
// / OLS (and optionally bootstrap) intervals for the varying coefficient.
// Classification uses per-coordinate least-squares standard errors
// sigma_hat * sqrt((X'X)^{-1}_jj), which reduce to the sigma/sqrt(n) scale
// thresholds when the design is orthogonal. Failed replicates are dropped
// and counted; more than 10% drops in a cell throws.
AggregateReport run_scenario(const SimulationScenario& sc);

// Direct simulation of theta_hat_LS ~ N(theta, sigma^2/n) under the
// orthogonal design, tallying the conditional coverage of the asymptotic
// interval (selected at nu0 = sqrt(lambda)) and of the two-step rule next
// to the closed-form cr1 / cr_two_step curves. draws must be >= 1e5.
struct OracleRun {
    CoverageCurve formula;
    std::vector<double> empirical_cr1;
    std::vector<double> empirical_cr;
};
OracleRun orthogonal_oracle_run(const TheoryConfig& cfg, const std::vector<double>& theta_grid,
                                long draws, std::uint64_t seed = 20260815);

// Empirical P(noise), P(weak), P(strong) of the varying coefficient for
// each theta in the grid; one "category" row per theta.
AggregateReport category_probability_sweep(const SimulationScenario& sc,
                                           const std::vector<double>& theta_grid);

}  // namespace weaksig
