#include "weaksig/cli_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "weaksig/adaptive_lasso.hpp"
#include "weaksig/coverage_theory.hpp"
#include "weaksig/normal.hpp"
#include "weaksig/sim_harness.hpp"
#include "weaksig/two_step.hpp"

namespace weaksig {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

// Reads a JSON config file into CLI11 items; nested objects map to
// subcommand sections, so {"simulate": {"reps": 100}} sets --reps of the
// simulate subcommand. Command-line flags take precedence as usual.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        input >> j;
        return collect(j, "", {});
    }

  private:
    static std::vector<CLI::ConfigItem> collect(const nlohmann::json& j, const std::string& name,
                                                std::vector<std::string> parents) {
        std::vector<CLI::ConfigItem> out;
        if (j.is_object()) {
            if (!name.empty()) parents.push_back(name);
            for (const auto& item : j.items()) {
                auto sub = collect(item.value(), item.key(), parents);
                out.insert(out.end(), sub.begin(), sub.end());
            }
            return out;
        }
        if (name.empty()) throw CLI::ConversionError("config must be a JSON object");
        CLI::ConfigItem item;
        item.name = name;
        item.parents = std::move(parents);
        if (j.is_array()) {
            for (const auto& v : j) item.inputs.push_back(scalar_to_string(v));
        } else {
            item.inputs.push_back(scalar_to_string(j));
        }
        out.push_back(std::move(item));
        return out;
    }

    static std::string scalar_to_string(const nlohmann::json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number()) return v.dump();
        throw CLI::ConversionError("unsupported config value: " + v.dump());
    }
};

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << content;
}

void write_json(const fs::path& path, const ordered_json& j) { write_text(path, j.dump(2) + "\n"); }

SigmaRule parse_sigma_rule(const std::string& name) {
    if (name == "universal") return SigmaRule::ScaledLassoUniversal;
    if (name == "quantile") return SigmaRule::ScaledLassoQuantile;
    if (name == "ols") return SigmaRule::OlsResidual;
    throw std::runtime_error("unknown sigma rule: " + name);
}

const char* sigma_rule_name(SigmaRule rule) {
    switch (rule) {
        case SigmaRule::ScaledLassoUniversal: return "universal";
        case SigmaRule::ScaledLassoQuantile: return "quantile";
        default: return "ols";
    }
}

const char* class_name(SignalClass c) {
    switch (c) {
        case SignalClass::Noise: return "noise";
        case SignalClass::Weak: return "weak";
        default: return "strong";
    }
}

int env_thread_cap() {
    const char* raw = std::getenv("WEAKSIG_THREADS");
    if (raw == nullptr) return 0;
    const long v = std::strtol(raw, nullptr, 10);
    return v > 0 ? static_cast<int>(v) : 0;
}

int capped_workers(int requested) {
    const int cap = env_thread_cap();
    if (cap <= 0) return requested;
    if (requested <= 0) return cap;
    return std::min(requested, cap);
}

struct AnalyzeArgs {
    std::string input;
    std::string response = "y";
    std::string out = ".";
    std::string sigma_rule = "universal";
    double alpha = 0.05;
    double tau = 0.05;
    double lambda = -1.0;
    bool lambda_set = false;
    bool allow_wide = false;
};

struct TheoryArgs {
    std::string out = ".";
    int n = 100;
    double sigma = 2.0;
    double lambda = 0.16;
    double alpha = 0.05;
    double tau = 0.2;
    double theta_max = -1.0;
    int points = 401;
};

struct SimulateArgs {
    std::string preset;
    std::string out = ".";
    std::string sigma_rule = "quantile";
    int n = 100;
    int p = 20;
    double sigma = 2.0;
    double rho = 0.0;
    std::vector<double> thetas;
    int theta_index = 3;
    int reps = 400;
    bool reps_set = false;
    double tau = 0.2;
    double alpha = 0.05;
    std::uint64_t seed = 42;
    bool known_sigma = false;
    double fixed_lambda = -1.0;
    bool orthogonal = false;
    bool bootstrap = false;
    int bootstrap_reps = 4000;
    int workers = 0;
    long draws = 1000000;
};

ordered_json interval_json(const IntervalReport& r) {
    ordered_json j;
    j["rule"] = r.rule == IntervalRule::Asymptotic ? "asymptotic" : "least_square";
    j["center"] = r.center;
    j["half_width"] = r.half_width;
    j["lower"] = r.center - r.half_width;
    j["upper"] = r.center + r.half_width;
    j["bias"] = r.bias;
    j["se"] = r.se;
    return j;
}

int do_analyze(const AnalyzeArgs& a) {
    const fs::path out_dir(a.out);
    fs::create_directories(out_dir);
    const IngestedData ing = ingest_csv(a.input, a.response, a.allow_wide);
    const Dataset& d = ing.standardized.data;
    const SigmaRule rule = parse_sigma_rule(a.sigma_rule);

    ordered_json report;
    report["version"] = kVersion;
    report["command"] = "analyze";
    ordered_json cfg_echo;
    cfg_echo["input"] = a.input;
    cfg_echo["response"] = ing.response_name;
    cfg_echo["alpha"] = a.alpha;
    cfg_echo["tau"] = a.tau;
    cfg_echo["sigma_rule"] = a.sigma_rule;
    cfg_echo["allow_wide"] = a.allow_wide;
    if (a.lambda_set) cfg_echo["lambda"] = a.lambda;
    report["config"] = cfg_echo;
    report["n"] = static_cast<long>(d.n);
    report["p"] = static_cast<long>(d.p);

    std::vector<std::string> warnings;
    const SigmaEstimate se = estimate_sigma(d, rule);
    if (!se.converged) warnings.emplace_back("sigma estimate did not converge; using last iterate");
    report["sigma"] = {{"value", se.value},
                       {"rule", sigma_rule_name(se.rule)},
                       {"converged", se.converged},
                       {"iterations", se.iterations}};

    if (d.n <= d.p) {
        warnings.emplace_back("wide dataset (n <= p): classification and intervals skipped");
        report["warnings"] = warnings;
        write_json(out_dir / "report.json", report);
        write_text(out_dir / "intervals.csv",
                   "index,name,class,rule,center,half_width,lower,upper,bias,se\n");
        return 0;
    }

    double lambda = a.lambda;
    if (a.lambda_set) {
        report["lambda_source"] = "flag";
    } else {
        const TuningGrid grid = bic_select(d, se.value);
        lambda = grid.lambdas(grid.selected_index);
        report["lambda_source"] = "bic";
        if (grid.all_zero_warning) {
            warnings.emplace_back("every BIC grid fit was the zero vector");
        }
    }
    report["lambda"] = lambda;

    TheoryConfig cfg;
    cfg.n = static_cast<int>(d.n);
    cfg.sigma = se.value;
    cfg.lambda = lambda;
    cfg.alpha = a.alpha;
    cfg.tau = a.tau;
    const ConfigCheck check = check_config(cfg);
    report["checks"] = {{"c1", check.c1}, {"c2", check.c2}, {"lambda_criterion", check.lambda_criterion}};
    if (!check.c1 || !check.c2) {
        std::ostringstream msg;
        msg << "regularity checks failed (c1: " << (check.c1 ? "ok" : "violated")
            << ", c2: " << (check.c2 ? "ok" : "violated")
            << "); pick alpha <= tau with tau below the c2 cap";
        throw std::runtime_error(msg.str());
    }
    if (!check.lambda_criterion) {
        warnings.emplace_back("sqrt(lambda) < z_{alpha/2} sigma / sqrt(n): coverage theory does not apply");
    }

    const FitResult fit = alasso_fit(d, lambda, se.value);
    const SignalClassification cls = classify(fit, cfg);
    const std::vector<IntervalReport> intervals = build_intervals(fit, cls, cfg, d);

    report["thresholds"] = {{"nu1", cls.nu1},
                            {"nu2", cls.nu2},
                            {"gamma1", cls.gamma1},
                            {"gamma2", cls.gamma2},
                            {"tau0", tau0(cfg)}};

    auto names_of = [&](const std::vector<int>& idx) {
        ordered_json arr = ordered_json::array();
        for (int i : idx) arr.push_back(ing.predictor_names[static_cast<std::size_t>(i)]);
        return arr;
    };
    report["classes"] = {{"noise", names_of(cls.noise_set)},
                         {"weak", names_of(cls.weak_set)},
                         {"strong", names_of(cls.strong_set)}};

    std::vector<SignalClass> class_of(static_cast<std::size_t>(d.p), SignalClass::Noise);
    for (int i : cls.weak_set) class_of[static_cast<std::size_t>(i)] = SignalClass::Weak;
    for (int i : cls.strong_set) class_of[static_cast<std::size_t>(i)] = SignalClass::Strong;
    std::vector<const IntervalReport*> interval_of(static_cast<std::size_t>(d.p), nullptr);
    for (const IntervalReport& r : intervals) interval_of[static_cast<std::size_t>(r.index)] = &r;

    ordered_json coefs = ordered_json::array();
    for (Eigen::Index j = 0; j < d.p; ++j) {
        ordered_json c;
        c["index"] = static_cast<long>(j);
        c["name"] = ing.predictor_names[static_cast<std::size_t>(j)];
        c["theta_ls"] = fit.theta_ls(j);
        c["theta_al"] = fit.theta_al(j);
        c["class"] = class_name(class_of[static_cast<std::size_t>(j)]);
        c["column_scale"] = ing.standardized.scale(j);
        if (const IntervalReport* r = interval_of[static_cast<std::size_t>(j)]) {
            c["interval"] = interval_json(*r);
        }
        coefs.push_back(std::move(c));
    }
    report["coefficients"] = coefs;
    report["y_center"] = ing.y_center;
    report["warnings"] = warnings;
    write_json(out_dir / "report.json", report);

    std::ostringstream csv;
    csv << "index,name,class,rule,center,half_width,lower,upper,bias,se\n";
    for (const IntervalReport& r : intervals) {
        csv << r.index << ',' << ing.predictor_names[static_cast<std::size_t>(r.index)] << ','
            << class_name(class_of[static_cast<std::size_t>(r.index)]) << ','
            << (r.rule == IntervalRule::Asymptotic ? "asymptotic" : "least_square") << ','
            << fmt(r.center) << ',' << fmt(r.half_width) << ',' << fmt(r.center - r.half_width)
            << ',' << fmt(r.center + r.half_width) << ',' << fmt(r.bias) << ',' << fmt(r.se)
            << '\n';
    }
    write_text(out_dir / "intervals.csv", csv.str());
    return 0;
}

int do_theory(const TheoryArgs& t) {
    const fs::path out_dir(t.out);
    fs::create_directories(out_dir);

    TheoryConfig cfg;
    cfg.n = t.n;
    cfg.sigma = t.sigma;
    cfg.lambda = t.lambda;
    cfg.alpha = t.alpha;
    cfg.tau = t.tau;
    if (cfg.n < 1 || cfg.sigma <= 0.0 || cfg.lambda <= 0.0) {
        throw std::runtime_error("theory: need n >= 1, sigma > 0, lambda > 0");
    }
    const ConfigCheck check = check_config(cfg);
    std::vector<std::string> warnings;
    if (!check.c1) warnings.emplace_back("c1 violated: tau < alpha");
    if (!check.c2) warnings.emplace_back("c2 violated: tau too large for this alpha");
    if (!check.lambda_criterion) {
        warnings.emplace_back("lambda criterion violated: sqrt(lambda) < z_{alpha/2} sigma / sqrt(n)");
    }

    const double root_n = std::sqrt(static_cast<double>(cfg.n));
    const double theta_max =
        t.theta_max > 0.0 ? t.theta_max : std::sqrt(cfg.lambda) + 6.0 * cfg.sigma / root_n;
    const int points = std::max(2, t.points);
    Eigen::VectorXd thetas = Eigen::VectorXd::LinSpaced(points, 0.0, theta_max);
    const CoverageCurve curve = coverage_curve(thetas, cfg);

    bool have_bounds = check.all();
    BoundaryPoints bp;
    if (have_bounds) bp = boundary_points(cfg);

    std::ostringstream csv;
    csv << "theta,p_d,e_pd_hat,cr1,cr,delta,bound,region_label\n";
    for (int i = 0; i < points; ++i) {
        const double th = thetas(i);
        csv << fmt(th) << ',' << fmt(detection_prob(th, cfg)) << ','
            << fmt(expected_detection_prob(th, cfg)) << ',' << fmt(curve.cr1(i)) << ','
            << fmt(curve.cr(i)) << ',' << fmt(curve.delta(i)) << ',';
        if (have_bounds) {
            const BoundResult b = theorem_bounds(th, cfg, bp);
            csv << fmt(b.bound) << ',' << b.region << '\n';
        } else {
            csv << "nan,\n";
        }
    }
    write_text(out_dir / "curves.csv", csv.str());

    ordered_json bounds;
    bounds["version"] = kVersion;
    if (have_bounds) {
        bounds["c1"] = bp.c1;
        bounds["c2"] = bp.c2;
        bounds["c3"] = bp.c3;
        bounds["c4"] = bp.c4;
        bounds["nu0"] = bp.nu0;
        bounds["nu1"] = bp.nu1;
        bounds["nu2"] = bp.nu2;
        bounds["nu3"] = bp.nu3;
        bounds["nu4"] = bp.nu4;
        bounds["regime"] = bp.nu0 < bp.nu3 ? 1 : 2;
        bounds["case_label"] = theorem_bounds(0.0, cfg, bp).case_label;
    }
    bounds["tau0"] = tau0(cfg);
    bounds["warnings"] = warnings;
    write_json(out_dir / "boundaries.json", bounds);

    ordered_json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = "theory";
    manifest["config"] = {{"n", cfg.n},     {"sigma", cfg.sigma}, {"lambda", cfg.lambda},
                          {"alpha", cfg.alpha}, {"tau", cfg.tau},     {"theta_max", theta_max},
                          {"points", points}};
    manifest["checks"] = {{"c1", check.c1}, {"c2", check.c2}, {"lambda_criterion", check.lambda_criterion}};
    manifest["tau0"] = tau0(cfg);
    manifest["p_d_at_zero"] = detection_prob(0.0, cfg);
    manifest["warnings"] = warnings;
    write_json(out_dir / "run_manifest.json", manifest);
    return 0;
}

SimulationScenario scenario_from_args(const SimulateArgs& s) {
    SimulationScenario sc;
    sc.n = s.n;
    sc.p = s.p;
    sc.sigma = s.sigma;
    sc.rho = s.rho;
    sc.theta_star = tiered_theta_template(s.p);
    sc.theta_varying_index = s.theta_index;
    sc.theta_grid = s.thetas;
    sc.replications = s.reps;
    sc.tau = s.tau;
    sc.alpha = s.alpha;
    sc.seed = s.seed;
    sc.sigma_rule = parse_sigma_rule(s.sigma_rule);
    sc.known_sigma = s.known_sigma;
    sc.fixed_lambda = s.fixed_lambda;
    sc.exact_orthogonalize = s.orthogonal;
    sc.with_bootstrap = s.bootstrap;
    sc.bootstrap_replications = s.bootstrap_reps;
    sc.workers = capped_workers(s.workers);
    return sc;
}

ordered_json scenario_json(const std::string& name, const SimulationScenario& sc) {
    ordered_json j;
    j["name"] = name;
    j["n"] = static_cast<long>(sc.n);
    j["p"] = static_cast<long>(sc.p);
    j["sigma"] = sc.sigma;
    j["rho"] = sc.rho;
    j["theta_grid"] = sc.theta_grid;
    j["theta_varying_index"] = static_cast<long>(sc.theta_varying_index);
    j["replications"] = sc.replications;
    j["tau"] = sc.tau;
    j["alpha"] = sc.alpha;
    j["seed"] = sc.seed;
    j["sigma_rule"] = sigma_rule_name(sc.sigma_rule);
    j["known_sigma"] = sc.known_sigma;
    j["fixed_lambda"] = sc.fixed_lambda;
    j["exact_orthogonalize"] = sc.exact_orthogonalize;
    j["with_bootstrap"] = sc.with_bootstrap;
    if (sc.with_bootstrap) j["bootstrap_replications"] = sc.bootstrap_replications;
    return j;
}

int do_simulate(const SimulateArgs& s) {
    const fs::path out_dir(s.out);
    fs::create_directories(out_dir);

    if (s.preset == "oracle-check") {
        TheoryConfig cfg;
        cfg.n = 100;
        cfg.sigma = 2.0;
        cfg.lambda = 0.16;
        cfg.alpha = 0.05;
        cfg.tau = 0.2;
        const double theta_max = std::sqrt(cfg.lambda) + 6.0 * cfg.sigma / std::sqrt(cfg.n);
        std::vector<double> grid(50);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            grid[i] = theta_max * static_cast<double>(i) / 49.0;
        }
        const OracleRun run = orthogonal_oracle_run(cfg, grid, s.draws, s.seed);
        std::ostringstream csv;
        csv << "theta,cr1_formula,cr1_empirical,cr_formula,cr_empirical\n";
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto k = static_cast<Eigen::Index>(i);
            csv << fmt(grid[i]) << ',' << fmt(run.formula.cr1(k)) << ','
                << fmt(run.empirical_cr1[i]) << ',' << fmt(run.formula.cr(k)) << ','
                << fmt(run.empirical_cr[i]) << '\n';
        }
        write_text(out_dir / "oracle.csv", csv.str());

        ordered_json manifest;
        manifest["version"] = kVersion;
        manifest["command"] = "simulate";
        manifest["preset"] = s.preset;
        manifest["config"] = {{"n", cfg.n},     {"sigma", cfg.sigma}, {"lambda", cfg.lambda},
                              {"alpha", cfg.alpha}, {"tau", cfg.tau},     {"draws", s.draws},
                              {"seed", s.seed}};
        write_json(out_dir / "run_manifest.json", manifest);
        return 0;
    }

    struct Job {
        std::string name;
        SimulationScenario sc;
        bool category_sweep = false;
    };
    std::vector<Job> jobs;
    if (s.preset.empty() || s.preset == "custom") {
        Job job;
        job.name = "custom";
        job.sc = scenario_from_args(s);
        if (job.sc.theta_grid.empty()) job.sc.theta_grid = {0.3, 0.75};
        jobs.push_back(std::move(job));
    } else if (s.preset == "coverage-tables") {
        for (double rho : {0.0, 0.2, 0.5}) {
            SimulateArgs cell = s;
            cell.rho = rho;
            Job job;
            std::ostringstream name;
            name << "rho" << rho;
            job.name = name.str();
            job.sc = scenario_from_args(cell);
            if (job.sc.theta_grid.empty()) job.sc.theta_grid = {0.3, 0.75};
            jobs.push_back(std::move(job));
        }
    } else if (s.preset == "category-sweep") {
        Job job;
        job.name = "category-sweep";
        job.sc = scenario_from_args(s);
        job.category_sweep = true;
        if (job.sc.theta_grid.empty()) {
            for (int i = 0; i <= 24; ++i) job.sc.theta_grid.push_back(0.05 * i);
        }
        jobs.push_back(std::move(job));
    } else if (s.preset == "smoke") {
        SimulateArgs cell = s;
        cell.rho = 0.2;
        if (!s.reps_set) cell.reps = 10;
        Job job;
        job.name = "smoke";
        job.sc = scenario_from_args(cell);
        if (job.sc.theta_grid.empty()) job.sc.theta_grid = {0.3};
        jobs.push_back(std::move(job));
    } else {
        throw std::runtime_error("unknown preset: " + s.preset +
                                 " (expected coverage-tables, category-sweep, smoke, or oracle-check)");
    }

    std::ostringstream csv;
    csv << "scenario,n,p,rho,theta,method,counted,coverage,mean_width,mc_stderr,fp_rate,"
           "p_noise,p_weak,p_strong\n";
    ordered_json scenarios = ordered_json::array();
    long total_dropped = 0, total_strong_zeroed = 0;
    for (const Job& job : jobs) {
        const AggregateReport rep = job.category_sweep
                                        ? category_probability_sweep(job.sc, job.sc.theta_grid)
                                        : run_scenario(job.sc);
        for (const ReportRow& row : rep.rows) {
            csv << job.name << ',' << job.sc.n << ',' << job.sc.p << ',' << fmt(job.sc.rho) << ','
                << fmt(row.theta) << ',' << row.method << ',' << row.counted << ','
                << fmt(row.coverage) << ',' << fmt(row.mean_width) << ',' << fmt(row.mc_stderr)
                << ',' << fmt(row.fp_rate) << ',' << fmt(row.category_probs[0]) << ','
                << fmt(row.category_probs[1]) << ',' << fmt(row.category_probs[2]) << '\n';
        }
        ordered_json sj = scenario_json(job.name, job.sc);
        sj["dropped"] = rep.dropped;
        sj["strong_zeroed"] = rep.strong_zeroed;
        scenarios.push_back(std::move(sj));
        total_dropped += rep.dropped;
        total_strong_zeroed += rep.strong_zeroed;
    }
    write_text(out_dir / "aggregate.csv", csv.str());

    ordered_json manifest;
    manifest["version"] = kVersion;
    manifest["command"] = "simulate";
    manifest["preset"] = s.preset.empty() ? "custom" : s.preset;
    manifest["seed"] = s.seed;
    manifest["workers"] = capped_workers(s.workers);
    manifest["dropped"] = total_dropped;
    manifest["strong_zeroed"] = total_strong_zeroed;
    manifest["scenarios"] = scenarios;
    write_json(out_dir / "run_manifest.json", manifest);
    return 0;
}

}  // namespace

IngestedData ingest_csv(const std::string& path, const std::string& response_name,
                        bool allow_wide) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty input file: " + path);
    const std::vector<std::string> header = split_line(line);
    if (header.empty()) throw std::runtime_error("empty header row in " + path);

    Eigen::Index y_col = -1;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == response_name) {
            if (y_col >= 0) throw std::runtime_error("duplicate response column: " + response_name);
            y_col = static_cast<Eigen::Index>(c);
        } else {
            names.push_back(header[c]);
        }
    }
    if (y_col < 0) throw std::runtime_error("response column '" + response_name + "' not found");
    if (names.empty()) throw std::runtime_error("no predictor columns in " + path);

    std::vector<std::vector<double>> rows;
    long row_no = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        ++row_no;
        const std::vector<std::string> cells = split_line(line);
        if (cells.size() != header.size()) {
            std::ostringstream msg;
            msg << "row " << row_no << " has " << cells.size() << " cells, expected "
                << header.size();
            throw std::runtime_error(msg.str());
        }
        std::vector<double> vals(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const std::string& cell = cells[c];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size()) {
                std::ostringstream msg;
                msg << "non-numeric cell at row " << row_no << ", column " << header[c];
                throw std::runtime_error(msg.str());
            }
            vals[c] = v;
        }
        rows.push_back(std::move(vals));
    }

    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto p = static_cast<Eigen::Index>(names.size());
    if (n < 2) throw std::runtime_error("need at least 2 data rows");
    if (n <= p && !allow_wide) {
        std::ostringstream msg;
        msg << "n = " << n << " <= p = " << p
            << "; pass --allow-wide for the sigma-only workflow";
        throw std::runtime_error(msg.str());
    }

    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index k = 0;
        for (std::size_t c = 0; c < rows[static_cast<std::size_t>(i)].size(); ++c) {
            const double v = rows[static_cast<std::size_t>(i)][c];
            if (static_cast<Eigen::Index>(c) == y_col) {
                y(i) = v;
            } else {
                X(i, k++) = v;
            }
        }
    }
    for (Eigen::Index j = 0; j < p; ++j) {
        if ((X.col(j).array() - X(0, j)).abs().maxCoeff() < 1e-12) {
            throw std::runtime_error("predictor column " + names[static_cast<std::size_t>(j)] +
                                     " is constant");
        }
    }

    IngestedData out;
    out.standardized = standardize(X, y, /*center=*/true);
    out.y_center = y.mean();
    out.standardized.data.y = y.array() - out.y_center;
    out.predictor_names = std::move(names);
    out.response_name = response_name;
    return out;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Weak-signal identification and two-step inference for adaptive-Lasso regression"};
    app.set_version_flag("--version", std::string("weaksig ") + kVersion);
    app.set_config("--config")->check(CLI::ExistingFile);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.require_subcommand(1);

    AnalyzeArgs a;
    CLI::App* analyze = app.add_subcommand("analyze", "Fit, classify, and report intervals for a CSV dataset");
    analyze->add_option("--input", a.input, "CSV file with a response column")->required();
    analyze->add_option("--response", a.response, "Response column name (default y)");
    analyze->add_option("--out", a.out, "Output directory");
    analyze->add_option("--alpha", a.alpha, "Interval miss level");
    analyze->add_option("--tau", a.tau, "Noise false-positive level");
    analyze->add_option("--sigma-rule", a.sigma_rule, "universal, quantile, or ols")
        ->check(CLI::IsMember({"universal", "quantile", "ols"}));
    CLI::Option* lam_opt = analyze->add_option("--lambda", a.lambda, "Fixed penalty (skips BIC)");
    analyze->add_flag("--allow-wide", a.allow_wide, "Accept n <= p (sigma-only workflow)");

    TheoryArgs t;
    CLI::App* theory = app.add_subcommand("theory", "Emit exact coverage curves and theorem bounds");
    theory->add_option("--n", t.n, "Sample size");
    theory->add_option("--sigma", t.sigma, "Noise standard deviation");
    theory->add_option("--lambda", t.lambda, "Penalty level");
    theory->add_option("--alpha", t.alpha, "Interval miss level");
    theory->add_option("--tau", t.tau, "Noise false-positive level");
    theory->add_option("--theta-max", t.theta_max, "Grid upper end (default sqrt(lambda)+6 sigma/sqrt(n))");
    theory->add_option("--points", t.points, "Grid size");
    theory->add_option("--out", t.out, "Output directory");

    SimulateArgs s;
    CLI::App* simulate = app.add_subcommand("simulate", "Run Monte Carlo scenarios");
    simulate->add_option("--preset", s.preset, "coverage-tables, category-sweep, smoke, or oracle-check")
        ->check(CLI::IsMember({"coverage-tables", "category-sweep", "smoke", "oracle-check", "custom"}));
    simulate->add_option("--out", s.out, "Output directory");
    simulate->add_option("--n", s.n, "Sample size");
    simulate->add_option("--p", s.p, "Predictor count");
    simulate->add_option("--sigma", s.sigma, "Noise standard deviation");
    simulate->add_option("--rho", s.rho, "AR(1) design correlation");
    simulate->add_option("--theta", s.thetas, "Swept coefficient values (repeatable)");
    simulate->add_option("--theta-index", s.theta_index, "Swept coefficient index");
    CLI::Option* reps_opt = simulate->add_option("--reps", s.reps, "Replications per cell");
    simulate->add_option("--tau", s.tau, "Noise false-positive level");
    simulate->add_option("--alpha", s.alpha, "Interval miss level");
    simulate->add_option("--seed", s.seed, "Base RNG seed");
    simulate->add_option("--sigma-rule", s.sigma_rule, "universal, quantile, or ols")
        ->check(CLI::IsMember({"universal", "quantile", "ols"}));
    simulate->add_flag("--known-sigma", s.known_sigma, "Use the true sigma instead of estimating");
    simulate->add_option("--fixed-lambda", s.fixed_lambda, "Fixed penalty (skips BIC)");
    simulate->add_flag("--orthogonal", s.orthogonal, "Orthogonalize design columns exactly");
    simulate->add_flag("--bootstrap", s.bootstrap, "Add percentile bootstrap intervals");
    simulate->add_option("--bootstrap-reps", s.bootstrap_reps, "Bootstrap resamples per replicate");
    simulate->add_option("--workers", s.workers, "Worker threads (0 = hardware)");
    simulate->add_option("--draws", s.draws, "Draws for oracle-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // help and version print as-is
        ordered_json err;
        err["error"] = e.what();
        std::cerr << err.dump() << '\n';
        return e.get_exit_code();
    }

    a.lambda_set = lam_opt->count() > 0;
    s.reps_set = reps_opt->count() > 0;

    try {
        if (analyze->parsed()) return do_analyze(a);
        if (theory->parsed()) return do_theory(t);
        if (simulate->parsed()) return do_simulate(s);
        throw std::runtime_error("no subcommand given");
    } catch (const std::exception& e) {
        ordered_json err;
        err["error"] = e.what();
        std::cerr << err.dump() << '\n';
        return 1;
    }
}

}  // namespace weaksig
