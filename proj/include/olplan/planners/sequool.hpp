#pragma once

#include <cstdint>

#include "olplan/core/model.hpp"
#include "olplan/planners/planner_result.hpp"

namespace olplan::planners {

/// n-th harmonic number, Σ_{k=1}^n 1/k.
double harmonic_number(std::int64_t n);

/// ⌊n / H̄(n)⌋, the deepest stage of SequOOL.
std::int64_t sequool_h_max(std::int64_t n);

/// Per-depth opening quota: ⌊h_max/h⌋ without reset, ⌊h_max/h²⌋ with reset.
std::int64_t sequool_quota(std::int64_t h_max, int h, AccessMode mode);

/// SequOOL for noiseless rewards: open the root, then at each depth h open the
/// quota of unopened depth-h nodes with the largest u-values, one evaluation
/// each. Recommends the argmax of u over the whole tree.
/// Throws BudgetTooSmall when h_max = 0 and NoisyEnvironment on noisy rewards.
PlannerResult run_sequool(Simulator& sim, std::int64_t n, double gamma, const RunOptions& opts = {});

/// Reset-condition variant: quota ⌊h_max/h²⌋ and every opening also pays the
/// h steps needed to reach its node.
PlannerResult run_sequool_reset(Simulator& sim, std::int64_t n, double gamma, const RunOptions& opts = {});

}  // namespace olplan::planners
