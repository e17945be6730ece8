#include "olplan/planners/sequool.hpp"

#include <memory>

#include "olplan/core/errors.hpp"

namespace olplan::planners {

double harmonic_number(std::int64_t n) {
    double sum = 0.0;
    for (std::int64_t k = n; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
    return sum;
}

std::int64_t sequool_h_max(std::int64_t n) {
    if (n < 1) return 0;
    return static_cast<std::int64_t>(static_cast<double>(n) / harmonic_number(n));
}

std::int64_t sequool_quota(std::int64_t h_max, int h, AccessMode mode) {
    const auto hh = static_cast<std::int64_t>(h);
    return mode == AccessMode::reset ? h_max / (hh * hh) : h_max / hh;
}

namespace {

PlannerResult run(Simulator& sim, std::int64_t n, double gamma, AccessMode mode, const RunOptions& opts) {
    if (!sim.deterministic_rewards()) throw NoisyEnvironment("SequOOL requires noiseless rewards");
    const std::int64_t h_max = sequool_h_max(n);
    if (h_max < 1) throw BudgetTooSmall("budget " + std::to_string(n) + " gives h_max = 0");

    auto tree = std::make_shared<PlanningTree>(sim.num_actions(), gamma, sim.root());
    tree->set_sample_log(opts.sample_log);
    BudgetLedger ledger(n, mode);
    PlannerResult res;
    res.planner = mode == AccessMode::reset ? "sequool_reset" : "sequool";
    res.budget_limit = n;

    tree->open(PlanningTree::kRoot, 1, sim, ledger);
    const auto any = [](const EdgeStats&) { return true; };
    for (std::int64_t h = 1; h <= h_max && !res.budget_exhausted; ++h) {
        const std::int64_t quota = sequool_quota(h_max, static_cast<int>(h), mode);
        if (quota == 0) break;
        for (NodeId id : tree->select_top_nodes(static_cast<int>(h), static_cast<std::size_t>(quota), any)) {
            if (!ledger.can_afford(ledger.opening_cost(static_cast<int>(h), 1))) {
                res.budget_exhausted = true;
                break;
            }
            if (opts.trace) {
                res.trace.push_back({TraceEvent::Kind::open, static_cast<int>(h), -1, tree->sequence(id), 1,
                                     tree->u_hat(id)});
            }
            tree->open(id, 1, sim, ledger);
        }
    }

    const NodeId best = *tree->best_node([](NodeId) { return true; });
    res.chosen_sequence = tree->sequence(best);
    res.first_action = res.chosen_sequence.front();
    res.budget_used = ledger.charged();
    res.evaluations = static_cast<std::int64_t>(sim.draws());
    res.max_opened_depth = tree->max_opened_depth();
    res.tree = std::move(tree);
    return res;
}

}  // namespace

PlannerResult run_sequool(Simulator& sim, std::int64_t n, double gamma, const RunOptions& opts) {
    return run(sim, n, gamma, AccessMode::free, opts);
}

PlannerResult run_sequool_reset(Simulator& sim, std::int64_t n, double gamma, const RunOptions& opts) {
    return run(sim, n, gamma, AccessMode::reset, opts);
}

}  // namespace olplan::planners
