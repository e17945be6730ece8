#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "olplan/core/model.hpp"
#include "olplan/env/synthetic_tree.hpp"

namespace olplan::harness {

enum class OutputFormat { csv, json };

/// Every knob of the CLI. Files use one `key = value` per line with dotted
/// keys; `#` starts a comment. Lists are comma-separated.
struct ExperimentConfig {
    // planner
    std::string planner = "platypoos";
    std::optional<double> btilde;     ///< olop only
    std::optional<double> rmaxtilde;  ///< olop only
    int horizon = 0;                  ///< uniform planners

    // environment
    std::string env = "toy";
    double gamma = 0.95;
    NoiseKind noise = NoiseKind::uniform;
    double b = 0.0;
    double shift = 100.0;
    double r_max = 130.0;
    env::SyntheticTreeConfig synthetic;  ///< gamma, noise and r_max are copied from the fields above

    std::int64_t budget = 1000;
    std::uint64_t seed = 0;
    int replications = 1;
    int rollout_steps = 20;
    double oracle_tol = 1e-6;

    // sweep grid; empty lists fall back to the scalar fields
    std::string sweep_mode = "run";
    std::vector<std::string> sweep_planners;
    std::vector<std::int64_t> sweep_budgets;
    std::vector<double> sweep_b;
    std::vector<double> sweep_btilde;
    bool sweep_btilde_matches_b = false;  ///< `sweep.btilde = b`: OLOP gets the true range

    // diagnose
    int diagnose_depth = 6;
    std::optional<double> diagnose_nu;
    std::optional<double> diagnose_rho;
    double diagnose_c = 2.0;
    int diagnose_eps_points = 20;
    double diagnose_delta = 0.1;
    std::int64_t diagnose_coverage_budget = 200;
    int diagnose_coverage_reps = 100;

    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    bool timing = false;

    /// Cross-field checks; throws InvalidConfig.
    void validate() const;
};

const std::vector<std::string>& planner_ids();
const std::vector<std::string>& env_ids();

/// Throws InvalidConfig naming the line and key of the first problem.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

}  // namespace olplan::harness
