#pragma once

#include <cstdint>

namespace olplan {

enum class AccessMode {
    free,   ///< any cached state can be sampled directly
    reset,  ///< reaching a depth-h node replays h steps from the start state
};

/// Exact integer accounting of the planning budget. One opening with m
/// evaluations charges m units; in reset mode an opening at depth h charges h
/// more. `overdraft` lets a planner whose guarantee is n+1 use the extra unit.
class BudgetLedger {
public:
    BudgetLedger(std::int64_t limit, AccessMode mode = AccessMode::free, std::int64_t overdraft = 0);

    [[nodiscard]] std::int64_t limit() const { return limit_; }
    [[nodiscard]] std::int64_t cap() const { return limit_ + overdraft_; }
    [[nodiscard]] std::int64_t charged() const { return charged_; }
    [[nodiscard]] std::int64_t remaining() const { return cap() - charged_; }
    [[nodiscard]] AccessMode mode() const { return mode_; }

    [[nodiscard]] std::int64_t opening_cost(int depth, std::int64_t m) const;
    [[nodiscard]] bool can_afford(std::int64_t units) const { return units <= remaining(); }

    /// Throws BudgetExhausted without charging anything when `units` exceed
    /// what is left.
    void charge(std::int64_t units);

private:
    std::int64_t limit_;
    AccessMode mode_;
    std::int64_t overdraft_;
    std::int64_t charged_ = 0;
};

}  // namespace olplan
