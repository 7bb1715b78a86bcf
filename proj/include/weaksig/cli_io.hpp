#pragma once

#include <string>
#include <vector>

#include "weaksig/core_model.hpp"

namespace weaksig {

// Parsed CSV: header row with one response column (default name "y"), all
// other columns numeric predictors. Predictors are centered and scaled to
// squared column norm n; the response is centered. Row numbers in error
// messages count data rows from 1 (the header is row 0).
struct IngestedData {
    StandardizeResult standardized;
    std::vector<std::string> predictor_names;
    std::string response_name;
    double y_center = 0.0;
};

// Throws std::runtime_error on a missing response column, a non-numeric cell
// (naming row and column), a constant predictor column (naming it), or
// n <= p without allow_wide.
IngestedData ingest_csv(const std::string& path, const std::string& response_name = "y",
                        bool allow_wide = false);

// Full command-line entry point (subcommands: analyze, theory, simulate).
// Returns the process exit code; errors are reported as one-line JSON on
// stderr.
int run_cli(int argc, const char* const* argv);

}  // namespace weaksig
