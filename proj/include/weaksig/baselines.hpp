#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "weaksig/core_model.hpp"
#include "weaksig/two_step.hpp"

namespace weaksig {

struct BootstrapConfig {
    int replications = 4000;  // must be >= 100
    std::uint64_t seed = 0;
};

struct BootstrapOutcome {
    double lower = 0.0;
    double upper = 0.0;
    int used = 0;     // resamples contributing to the quantiles
    int dropped = 0;  // resamples abandoned after 50 redraws
};

// Full-model least-squares interval theta_ls_i +/- z_{alpha/2} sigma_hat
// sqrt((X'X)^{-1}_ii).
IntervalReport ols_interval(const Dataset& d, double sigma_hat, double alpha, int index);

// Percentile endpoints: the ceil(B alpha/2)-th and ceil(B (1-alpha/2))-th
// order statistics of the replicate values.
std::pair<double, double> percentile_endpoints(std::vector<double> values, double alpha);

// Pairs bootstrap of the adaptive-Lasso pipeline at a lambda held fixed from
// the original fit. Each resample draws n rows with replacement, restandardizes,
// refits OLS weights and the adaptive Lasso, and records the coefficient on
// the original column scale. Degenerate resamples (zero column or singular
// gram) are redrawn up to 50 times, then dropped and counted.
BootstrapOutcome bootstrap_interval(const Dataset& d, double lambda,
                                    const BootstrapConfig& cfg, double alpha, int index);

}  // namespace weaksig
