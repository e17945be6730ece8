#include "olplan/planners/platypoos.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>

#include "olplan/core/errors.hpp"

namespace olplan::planners {

namespace {

std::int64_t ceil_pos(double x) { return static_cast<std::int64_t>(std::ceil(x)); }

}  // namespace

int PlatypoosSchedule::top(int h) const {
    const std::int64_t d = std::max<std::int64_t>(1, ceil_pos(double(h) * h * std::pow(gamma, 2.0 * h)));
    if (d > h_max) return -1;
    // largest p with d 2^p <= h_max
    int p = 0;
    while ((d << (p + 1)) <= h_max) ++p;
    return p;
}

std::int64_t PlatypoosSchedule::evals(int h, int p) const {
    return std::max<std::int64_t>(1, ceil_pos(double(h) * std::ldexp(1.0, p) * std::pow(gamma, 2.0 * h)));
}

std::int64_t PlatypoosSchedule::quota(int h, int p) const {
    return h_max / (static_cast<std::int64_t>(h) * evals(h, p));
}

std::int64_t PlatypoosSchedule::threshold(int h, int p) const {
    if (h <= 1) return 0;
    return ceil_pos(double(h - 1) * std::ldexp(1.0, p) * std::pow(gamma, 2.0 * (h - 1)));
}

std::int64_t PlatypoosSchedule::cross_validation_evals(int t) const {
    const double g2 = gamma * gamma;
    return ceil_pos(double(t + 1) * std::pow(gamma, 2.0 * t) * double(h_max) * (1.0 - g2) * (1.0 - g2));
}

std::int64_t PlatypoosSchedule::exploration_charge_bound() const {
    std::int64_t total = h_max;
    for (std::int64_t h = 1; h <= h_max; ++h) {
        total += static_cast<std::int64_t>(std::max(0, top(static_cast<int>(h)) + 1)) * (h_max / h);
    }
    return total;
}

PlatypoosSchedule platypoos_schedule(std::int64_t n, double gamma) {
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0, 1)");
    PlatypoosSchedule s;
    s.n = n;
    s.gamma = gamma;
    if (n >= 1) {
        const double l = std::log2(static_cast<double>(n)) + 1.0;
        s.h_max = static_cast<std::int64_t>(std::floor(static_cast<double>(n) / (2.0 * l * l)));
    }
    if (s.h_max < 1) throw BudgetTooSmall("budget " + std::to_string(n) + " gives h_max = 0");
    s.p_max = std::bit_width(static_cast<std::uint64_t>(s.h_max)) - 1;
    return s;
}

PlannerResult run_platypoos(Simulator& sim, std::int64_t n, double gamma, const RunOptions& opts) {
    const PlatypoosSchedule sched = platypoos_schedule(n, gamma);
    auto tree = std::make_shared<PlanningTree>(sim.num_actions(), gamma, sim.root());
    tree->set_sample_log(opts.sample_log);
    BudgetLedger ledger(n, AccessMode::free, 1);
    PlannerResult res;
    res.planner = "platypoos";
    res.budget_limit = n;

    tree->open(PlanningTree::kRoot, sched.h_max, sim, ledger);

    // exploration
    for (int h = 1; h <= sched.h_max && !res.budget_exhausted; ++h) {
        for (int p = sched.top(h); p >= 0 && !res.budget_exhausted; --p) {
            const std::int64_t q = sched.quota(h, p);
            if (q == 0) continue;
            const std::int64_t m = sched.evals(h, p);
            const std::int64_t e = sched.threshold(h, p);
            auto eligible = [e](const EdgeStats& s) { return s.count() >= e; };
            for (NodeId id : tree->select_top_nodes(h, static_cast<std::size_t>(q), eligible)) {
                if (!ledger.can_afford(ledger.opening_cost(h, m))) {
                    res.budget_exhausted = true;
                    break;
                }
                if (opts.trace) {
                    res.trace.push_back({TraceEvent::Kind::open, h, p, tree->sequence(id), m, tree->u_hat(id)});
                }
                tree->open(id, m, sim, ledger);
            }
        }
    }

    // candidates, from the pre-cross-validation statistics
    std::vector<NodeId> candidate(static_cast<std::size_t>(sched.p_max) + 1);
    std::vector<char> ok(tree->size());
    for (int p = 0; p <= sched.p_max; ++p) {
        for (NodeId id = 1; id < tree->size(); ++id) {
            const TreeNode& nd = tree->node(id);
            const bool parent_ok = nd.depth == 1 || ok[nd.parent];
            ok[id] = parent_ok && (nd.depth < 2 || nd.stats.count() >= sched.threshold(nd.depth, p));
        }
        // depth-1 nodes always qualify, so a candidate exists
        candidate[static_cast<std::size_t>(p)] = *tree->best_node([&ok](NodeId id) { return ok[id] != 0; });
    }

    // cross-validation
    for (int p = 0; p <= sched.p_max && !res.budget_exhausted; ++p) {
        const NodeId cand = candidate[static_cast<std::size_t>(p)];
        const int depth = tree->node(cand).depth;
        for (int t = 0; t < depth; ++t) {
            const std::int64_t c = sched.cross_validation_evals(t);
            if (c < 1) continue;
            if (!ledger.can_afford(ledger.opening_cost(t, c))) {
                res.budget_exhausted = true;
                break;
            }
            const NodeId edge = tree->ancestor(cand, t + 1);
            tree->add_samples(edge, c, sim, ledger);
            if (opts.trace) {
                res.trace.push_back({TraceEvent::Kind::cross_validation, t, p, tree->sequence(edge), c,
                                     tree->u_hat(edge)});
            }
        }
    }

    // output
    std::optional<NodeId> best;
    double best_value = 0.0;
    for (int p = 0; p <= sched.p_max; ++p) {
        const NodeId cand = candidate[static_cast<std::size_t>(p)];
        res.candidates[p] = tree->sequence(cand);
        const double v = tree->u_hat(cand);
        if (!best || tree->ranks_before(cand, v, *best, best_value)) {
            best = cand;
            best_value = v;
        }
    }
    res.chosen_sequence = tree->sequence(*best);
    res.first_action = res.chosen_sequence.front();
    res.budget_used = ledger.charged();
    res.evaluations = static_cast<std::int64_t>(sim.draws());
    res.max_opened_depth = tree->max_opened_depth();
    res.tree = std::move(tree);
    return res;
}

}  // namespace olplan::planners
