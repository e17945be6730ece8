#pragma once

#include <cstdint>

#include "olplan/core/model.hpp"
#include "olplan/planners/planner_result.hpp"

namespace olplan::planners {

/// Exploration schedule of PlaTγPOOS, a pure function of (n, γ).
///
///   h_max  = ⌊n / (2(log₂n + 1)²)⌋,   p_max = ⌊log₂ h_max⌋
///   m(h,p) = ⌈h 2^p γ^{2h}⌉                evaluations per opening
///   q(h,p) = ⌊h_max / (h m(h,p))⌋          nodes opened
///   e(h,p) = ⌈(h-1) 2^p γ^{2(h-1)}⌉        samples a node needs to be eligible
///   top(h) = ⌊log₂(h_max / ⌈h²γ^{2h}⌉)⌋    first p of stage h, -1 when empty
///
/// m and the ⌈h²γ^{2h}⌉ divisor are floored at 1 so that γ = 0 stays defined.
struct PlatypoosSchedule {
    std::int64_t n = 0;
    double gamma = 0.0;
    std::int64_t h_max = 0;
    int p_max = 0;

    [[nodiscard]] int top(int h) const;
    [[nodiscard]] std::int64_t evals(int h, int p) const;
    [[nodiscard]] std::int64_t quota(int h, int p) const;
    [[nodiscard]] std::int64_t threshold(int h, int p) const;
    /// ⌈(t+1) γ^{2t} h_max (1-γ²)²⌉ extra samples of the action at position t
    /// of each candidate.
    [[nodiscard]] std::int64_t cross_validation_evals(int t) const;
    /// Upper bound of the exploration charge, root opening included.
    [[nodiscard]] std::int64_t exploration_charge_bound() const;
};

/// Throws BudgetTooSmall when h_max = 0.
PlatypoosSchedule platypoos_schedule(std::int64_t n, double gamma);

/// Scale-free planner for deterministic dynamics and noisy rewards. It takes
/// neither the reward range nor the noise range.
///
/// 1. open the root with h_max evaluations;
/// 2. for h = 1..h_max and p = top(h)..0, open with m(h,p) evaluations the
///    q(h,p) best unopened depth-h nodes among those with T >= e(h,p);
/// 3. for each p, the candidate a^p maximises û over the nodes whose every
///    prefix a_[t], t in [2, h(a)], has T >= e(t,p);
/// 4. every candidate action a^p_t receives the cross-validation samples;
/// 5. the output is the candidate with the best refreshed û.
///
/// Never charges more than n + 1; when the ledger runs dry the remaining
/// steps are skipped and the output is built from the existing tree.
PlannerResult run_platypoos(Simulator& sim, std::int64_t n, double gamma, const RunOptions& opts = {});

}  // namespace olplan::planners
