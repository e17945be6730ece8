#include "olplan/oracle/coverage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "olplan/core/errors.hpp"
#include "olplan/planners/platypoos.hpp"

namespace olplan::oracle {

double xi_radius(double b, int p_max, std::int64_t n, double delta, int p, RadiusForm form) {
    const double factor = form == RadiusForm::p_max ? p_max : p_max + 1;
    return b * std::sqrt(factor * std::log(4.0 * static_cast<double>(n) / delta) / std::ldexp(1.0, p + 1));
}

namespace {

struct RepOutcome {
    bool violated = false;
    std::int64_t pairs = 0;
};

RepOutcome one_replication(const GenerativeModel& model, std::int64_t n, double delta, std::uint64_t seed,
                           RadiusForm form) {
    Simulator sim(model, seed);
    const planners::PlannerResult res = planners::run_platypoos(sim, n, model.gamma());
    const planners::PlatypoosSchedule sched = planners::platypoos_schedule(n, model.gamma());
    const PlanningTree& tree = *res.tree;
    const std::vector<double> est = tree.u_hat_all();

    // true u of every node, accumulated down the tree
    std::vector<double> truth(tree.size(), 0.0);
    std::vector<double> discount{1.0};
    for (NodeId id = 1; id < tree.size(); ++id) {
        const TreeNode& nd = tree.node(id);
        while (discount.size() < static_cast<std::size_t>(nd.depth)) discount.push_back(discount.back() * model.gamma());
        const State from = tree.node(nd.parent).state;
        truth[id] = truth[nd.parent] + discount[static_cast<std::size_t>(nd.depth - 1)] * model.mean_reward(from, nd.action);
    }

    RepOutcome out;
    const double b = model.noise().range();
    std::vector<char> ok(tree.size());
    for (int p = 0; p <= sched.p_max; ++p) {
        const double radius = xi_radius(b, sched.p_max, n, delta, p, form);
        for (NodeId id = 1; id < tree.size(); ++id) {
            const TreeNode& nd = tree.node(id);
            ok[id] = (nd.depth == 1 || ok[nd.parent]) &&
                     (nd.depth < 2 || nd.stats.count() >= sched.threshold(nd.depth, p));
            if (!ok[id]) continue;
            ++out.pairs;
            if (std::abs(est[id] - truth[id]) > radius) out.violated = true;
        }
    }
    return out;
}

}  // namespace

CoverageResult concentration_coverage(const GenerativeModel& model, std::int64_t n, double delta, int replications,
                                      std::uint64_t seed, RadiusForm form, int jobs) {
    if (!(delta > 0.0 && delta <= 1.0)) throw InvalidArgument("delta must lie in (0, 1]");
    if (replications < 1) throw InvalidArgument("coverage needs at least one replication");
    std::vector<RepOutcome> outcomes(static_cast<std::size_t>(replications));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int r = next++; r < replications; r = next++) {
            outcomes[static_cast<std::size_t>(r)] =
                one_replication(model, n, delta, derive_seed(seed, static_cast<std::uint64_t>(r)), form);
        }
    };
    const int threads = std::clamp(jobs, 1, replications);
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    CoverageResult res;
    res.replications = replications;
    for (const RepOutcome& o : outcomes) {
        res.violating_replications += o.violated ? 1 : 0;
        res.checked_pairs += o.pairs;
    }
    return res;
}

}  // namespace olplan::oracle
