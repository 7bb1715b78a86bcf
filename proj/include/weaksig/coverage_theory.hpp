#pragma once

#include <string>

#include <Eigen/Dense>

#include "weaksig/signal_id.hpp"

namespace weaksig {

// Knot locations of the piecewise coverage functions. c1..c4 are fixed points
// of theta = sqrt(lambda) -/+ z sigma_tilde(theta)/sqrt(n) (c1, c2) and the
// same with an extra z sigma/sqrt(n) offset (c3, c4); nu0..nu4 are the closed
// -form thresholds.
struct BoundaryPoints {
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
    double nu0 = 0.0, nu1 = 0.0, nu2 = 0.0, nu3 = 0.0, nu4 = 0.0;
};

// Exact conditional coverage curves over a theta grid.
struct CoverageCurve {
    Eigen::VectorXd thetas;
    Eigen::VectorXd cr1;
    Eigen::VectorXd cr;
    Eigen::VectorXd delta;  // cr - cr1 entrywise
};

// Lower bound for delta(theta) with the region it came from.
struct BoundResult {
    double bound = 0.0;
    std::string region;   // e.g. "[c1,nu0]"
    int case_label = 0;   // 1..3 within regime 1, 4..5 within regime 2
};

// Shrinkage-adjusted sd factor (1 + lambda/theta^2)^{-1} sigma; 0 at theta=0.
double sigma_tilde(double theta, const TheoryConfig& cfg);

// Selection probability P(|theta-hat_LS| > nu) for theta-hat_LS ~ N(theta, sigma^2/n).
double p_s(double theta, double nu, const TheoryConfig& cfg);

// Joint probability P(theta in CI_a, |theta-hat_LS| > nu) for the asymptotic
// interval with half-width z sigma_tilde(theta)/sqrt(n); piecewise closed form.
double cr_a(double theta, double nu, const TheoryConfig& cfg);

// Same with the least-squares half-width z sigma/sqrt(n).
double cr_b(double theta, double nu, const TheoryConfig& cfg);

// Conditional coverage of the asymptotic method given selection at nu0 = sqrt(lambda).
double cr1(double theta, const TheoryConfig& cfg);

// Conditional coverage of the two-step method given selection at nu1.
double cr_two_step(double theta, const TheoryConfig& cfg);

// Curve evaluation over a grid.
CoverageCurve coverage_curve(const Eigen::VectorXd& thetas, const TheoryConfig& cfg);

// Solves the four fixed-point equations by bisection inside their bracketing
// intervals; root residuals below 1e-10. Requires the lambda criterion.
BoundaryPoints boundary_points(const TheoryConfig& cfg);

// Piecewise lower bound for delta(theta) = cr_two_step - cr1. Regime 1 when
// sqrt(lambda) < nu3, regime 2 otherwise; negative theta is reflected.
BoundResult theorem_bounds(double theta, const TheoryConfig& cfg, const BoundaryPoints& bp);

}  // namespace weaksig
