#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "olplan/core/model.hpp"
#include "olplan/harness/config.hpp"
#include "olplan/planners/planner_result.hpp"

namespace olplan::harness {

struct RunRecord {
    std::string planner;
    std::string env;
    std::uint64_t seed = 0;
    std::int64_t n = 0;
    double gamma = 0.0;
    NoiseKind noise_kind = NoiseKind::none;
    double b = 0.0;
    std::optional<double> btilde;
    std::optional<double> rmaxtilde;
    std::optional<Action> first_action;
    std::string chosen_sequence;
    std::optional<double> regret;          ///< Q*-gap of the first action (run)
    std::optional<double> shifted_return;  ///< Σ γ^t (r_t - shift) over the rollout
    std::int64_t budget_used = 0;          ///< largest per-step charge in a rollout
    int max_depth = 0;
    double wallclock_ms = 0.0;  ///< 0 unless output.timing is set
    std::vector<Action> actions;  ///< executed actions of a rollout
    std::string error;
};

/// Environment of `cfg` with noise range `b`.
std::unique_ptr<GenerativeModel> make_env(const ExperimentConfig& cfg, double b);

/// Dispatches on the planner id.
planners::PlannerResult plan(const std::string& planner, Simulator& sim, std::int64_t n, double gamma,
                             const ExperimentConfig& cfg, std::optional<double> btilde,
                             const planners::RunOptions& opts = {});

/// One planning call from the initial state, with its simple regret.
RunRecord run_once(const ExperimentConfig& cfg);

/// Receding-horizon control: plan with budget n from the current state,
/// execute the first action with the environment's own noise, repeat.
RunRecord rollout(const ExperimentConfig& cfg);

/// Cartesian grid planners × budgets × b × b̃ × replications, in that order.
/// Rows are independent of `jobs`; failures fill the error column.
std::vector<RunRecord> sweep(const ExperimentConfig& cfg, int jobs = 1);

/// Seed of replication `rep` in the sweep cell (env, n, noise, b). Running
/// `run_once` or `rollout` with this seed reproduces the sweep row.
std::uint64_t cell_seed(const ExperimentConfig& cfg, std::int64_t n, double b, int rep);

/// Count profiles, κ estimates, the count sandwich verdict and ξ
/// coverage for the configured environment.
nlohmann::json diagnose(const ExperimentConfig& cfg, int jobs = 1);

}  // namespace olplan::harness
