#pragma once

#include <cstdint>
#include <utility>

#include "olplan/core/model.hpp"
#include "olplan/planners/planner_result.hpp"

namespace olplan::planners {

struct OlopConfig {
    double noise_range = 0.0;  ///< b̃
    double r_max = 0.0;        ///< R̃_max
    std::int64_t episodes = 0;        ///< M; 0 derives it from the budget
    std::int64_t episode_length = 0;  ///< L; 0 derives it from M
};

/// Default (M, L): L = max(1, ⌈ln M / (2 ln(1/γ))⌉) and M the largest count
/// with M L <= evaluations.
std::pair<std::int64_t, std::int64_t> olop_episodes(std::int64_t evaluations, double gamma);

/// Open-loop optimistic planning. Each of M episodes plays the depth-L
/// sequence maximising
///   B(a) = min over prefixes a' of  û(a') + Σ_t γ^t b̃ √(2 ln M / T_{a'_[t+1]}) + R̃ γ^{h(a')} / (1-γ)
/// with unvisited prefixes at +∞, and recommends the most played first action.
/// The budget n counts openings of K evaluations, so M L <= nK.
/// Throws InvalidConfig for infeasible (M, L) or ranges.
PlannerResult run_olop(Simulator& sim, std::int64_t n, double gamma, const OlopConfig& cfg,
                       const RunOptions& opts = {});

}  // namespace olplan::planners
