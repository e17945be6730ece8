#include "olplan/planners/olop.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "olplan/core/errors.hpp"

namespace olplan::planners {

namespace {

std::int64_t length_for(std::int64_t m, double gamma) {
    if (gamma <= 0.0 || m <= 1) return 1;
    const double l = std::ceil(std::log(static_cast<double>(m)) / (2.0 * std::log(1.0 / gamma)));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(l));
}

struct Node {
    std::int64_t visits = 0;
    double mean = 0.0;
    std::uint32_t first_child = 0;  ///< 0 while unexpanded (the root is node 0)
};

class OlopTree {
public:
    explicit OlopTree(int k) : k_(k) { nodes_.emplace_back(); }

    std::uint32_t child(std::uint32_t id, Action a) {
        if (nodes_[id].first_child == 0) {
            nodes_[id].first_child = static_cast<std::uint32_t>(nodes_.size());
            nodes_.resize(nodes_.size() + static_cast<std::size_t>(k_));
        }
        return nodes_[id].first_child + a;
    }
    [[nodiscard]] const Node& at(std::uint32_t id) const { return nodes_[id]; }
    Node& at(std::uint32_t id) { return nodes_[id]; }

private:
    int k_;
    std::vector<Node> nodes_;
};

struct Search {
    const OlopTree& tree;
    int k;
    double gamma;
    double bonus;  ///< b̃ √(2 ln M)
    double tail;   ///< R̃ / (1-γ)
    std::int64_t length;
    std::vector<Action> path;
    std::vector<Action> best;
    double best_value = -std::numeric_limits<double>::infinity();
    bool found = false;

    void offer(double value) {
        if (!found || value > best_value) {
            found = true;
            best_value = value;
            best = path;
            best.resize(static_cast<std::size_t>(length), 0);
        }
    }

    // `sum` is Σ_{t<depth} γ^t (r̂_t + bonus/√T_t) over the current prefix.
    void visit(std::uint32_t id, int depth, double discount, double sum, double running_min) {
        if (depth == length) {
            offer(running_min);
            return;
        }
        const Node& n = tree.at(id);
        for (int a = 0; a < k; ++a) {
            path.push_back(static_cast<Action>(a));
            const Node* c = n.first_child == 0 ? nullptr : &tree.at(n.first_child + static_cast<std::uint32_t>(a));
            if (c == nullptr || c->visits == 0) {
                offer(running_min);
            } else {
                const double s = sum + discount * (c->mean + bonus / std::sqrt(static_cast<double>(c->visits)));
                const double next_discount = discount * gamma;
                const double u = s + next_discount * tail;
                visit(n.first_child + static_cast<std::uint32_t>(a), depth + 1, next_discount, s,
                      std::min(running_min, u));
            }
            path.pop_back();
        }
    }
};

}  // namespace

std::pair<std::int64_t, std::int64_t> olop_episodes(std::int64_t evaluations, double gamma) {
    if (evaluations < 1) return {0, 1};
    std::int64_t lo = 0;
    std::int64_t hi = evaluations;
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo + 1) / 2;
        if (mid * length_for(mid, gamma) <= evaluations) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return {lo, length_for(std::max<std::int64_t>(lo, 1), gamma)};
}

PlannerResult run_olop(Simulator& sim, std::int64_t n, double gamma, const OlopConfig& cfg, const RunOptions& opts) {
    if (!(cfg.noise_range >= 0.0) || !std::isfinite(cfg.noise_range)) {
        throw InvalidConfig("OLOP requires a finite noise range btilde >= 0");
    }
    if (!(cfg.r_max > 0.0) || !std::isfinite(cfg.r_max)) throw InvalidConfig("OLOP requires rmaxtilde > 0");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0, 1)");
    const int k = sim.num_actions();
    const std::int64_t evaluations = n * k;
    auto [m, l] = olop_episodes(evaluations, gamma);
    if (cfg.episodes > 0) m = cfg.episodes;
    if (cfg.episode_length > 0) l = cfg.episode_length;
    if (m < 1 || l < 1 || m * l > evaluations) {
        throw InvalidConfig("OLOP episodes M=" + std::to_string(m) + ", L=" + std::to_string(l) +
                            " do not fit " + std::to_string(evaluations) + " evaluations");
    }

    BudgetLedger ledger(evaluations);
    OlopTree tree(k);
    const double bonus = cfg.noise_range * std::sqrt(2.0 * std::log(static_cast<double>(m)));
    const double inf = std::numeric_limits<double>::infinity();
    PlannerResult res;
    res.planner = "olop";
    res.budget_limit = n;

    for (std::int64_t e = 0; e < m; ++e) {
        Search search{tree, k, gamma, bonus, cfg.r_max / (1.0 - gamma), l, {}, {}, -inf, false};
        search.path.reserve(static_cast<std::size_t>(l));
        search.visit(0, 0, 1.0, 0.0, inf);
        ledger.charge(l);
        if (opts.trace) {
            res.trace.push_back({TraceEvent::Kind::episode, static_cast<int>(e), -1, ActionSeq(search.best), l,
                                 search.best_value});
        }
        State x = sim.root();
        std::uint32_t id = 0;
        for (Action a : search.best) {
            const double r = sim.sample(x, a);
            id = tree.child(id, a);
            Node& nd = tree.at(id);
            ++nd.visits;
            nd.mean += (r - nd.mean) / static_cast<double>(nd.visits);
            x = sim.step(x, a);
        }
    }

    // greedy most-visited path; the first action is the recommendation
    std::vector<Action> chosen;
    std::uint32_t id = 0;
    while (tree.at(id).first_child != 0) {
        const std::uint32_t first = tree.at(id).first_child;
        Action best = 0;
        for (int a = 1; a < k; ++a) {
            if (tree.at(first + static_cast<std::uint32_t>(a)).visits > tree.at(first + best).visits) {
                best = static_cast<Action>(a);
            }
        }
        if (tree.at(first + best).visits == 0) break;
        chosen.push_back(best);
        id = first + best;
    }
    res.chosen_sequence = ActionSeq(std::move(chosen));
    res.first_action = res.chosen_sequence.front();
    res.budget_used = (ledger.charged() + k - 1) / k;
    res.evaluations = static_cast<std::int64_t>(sim.draws());
    res.max_opened_depth = static_cast<int>(l) - 1;
    return res;
}

}  // namespace olplan::planners
