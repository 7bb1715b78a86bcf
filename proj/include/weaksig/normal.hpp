#pragma once

// Standard normal CDF and quantile to absolute accuracy better than 1e-12.
namespace weaksig {

// P(Z <= x) for Z ~ N(0,1).
double norm_cdf(double x);

// Inverse of norm_cdf on (0,1). Throws std::domain_error outside (0,1).
double norm_quantile(double p);

// Standard normal density.
double norm_pdf(double x);

}  // namespace weaksig
