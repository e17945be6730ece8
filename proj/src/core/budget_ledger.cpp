#include "olplan/core/budget_ledger.hpp"

#include <string>

#include "olplan/core/errors.hpp"

namespace olplan {

BudgetLedger::BudgetLedger(std::int64_t limit, AccessMode mode, std::int64_t overdraft)
    : limit_(limit), mode_(mode), overdraft_(overdraft) {
    if (limit < 0) throw InvalidArgument("budget limit must be non-negative");
    if (overdraft < 0 || overdraft > 1) throw InvalidArgument("overdraft must be 0 or 1");
}

std::int64_t BudgetLedger::opening_cost(int depth, std::int64_t m) const {
    return m + (mode_ == AccessMode::reset ? depth : 0);
}

void BudgetLedger::charge(std::int64_t units) {
    if (units < 0) throw InvalidArgument("negative charge");
    if (!can_afford(units)) {
        throw BudgetExhausted("charge of " + std::to_string(units) + " exceeds remaining budget " +
                              std::to_string(remaining()));
    }
    charged_ += units;
}

}  // namespace olplan
