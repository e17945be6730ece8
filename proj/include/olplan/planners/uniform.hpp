#pragma once

#include <cstdint>
#include <vector>

#include "olplan/core/model.hpp"
#include "olplan/planners/planner_result.hpp"

namespace olplan::planners {

/// Estimates from one depth-H episode per sequence of A^H.
struct UniformEstimates {
    int horizon = 0;
    int num_actions = 0;
    /// û of every depth-H sequence, indexed by its base-K value (lexicographic order).
    std::vector<double> leaf_u_hat;
    /// T_{a_[h]} shared by every depth-h prefix, for h = 0..H (entry 0 unused).
    std::vector<std::int64_t> prefix_count;
};

/// K^H episodes cost K^H H evaluations, which must fit in nK. Throws
/// InfeasibleHorizon otherwise. `pooled` averages every sample of a prefix
/// edge across the episodes that share it.
UniformEstimates uniform_estimates(Simulator& sim, std::int64_t n, int horizon, double gamma, bool pooled);

/// Each sequence estimated from its own episode only.
PlannerResult run_uniform_naive(Simulator& sim, std::int64_t n, int horizon, double gamma);
/// Prefix statistics pooled across episodes.
PlannerResult run_uniform_good(Simulator& sim, std::int64_t n, int horizon, double gamma);

}  // namespace olplan::planners
