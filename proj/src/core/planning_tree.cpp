#include "olplan/core/planning_tree.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "olplan/core/errors.hpp"

namespace olplan {

void EdgeStats::add(double reward) {
    ++count_;
    sum_ += reward;
    mean_ += (reward - mean_) / static_cast<double>(count_);
}

double EdgeStats::mean() const {
    if (count_ == 0) throw MissingSamples("edge has no samples");
    return mean_;
}

void SampleLog::record(const ActionSeq& from, Action action, double reward, std::uint64_t draw) {
    nlohmann::json rec = {{"seq", from.to_string()}, {"action", action}, {"reward", reward}, {"draw", draw}};
    *out_ << rec.dump() << '\n';
}

PlanningTree::PlanningTree(int num_actions, double gamma, State root_state)
    : num_actions_(num_actions), gamma_(gamma) {
    if (num_actions < 1) throw InvalidArgument("need at least one action");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0, 1)");
    TreeNode root;
    root.state = root_state;
    nodes_.push_back(root);
    levels_.push_back({kRoot});
}

std::span<const NodeId> PlanningTree::level(int depth) const {
    if (depth < 0 || depth > max_depth()) return {};
    return levels_[static_cast<std::size_t>(depth)];
}

std::optional<NodeId> PlanningTree::find(const ActionSeq& seq) const {
    NodeId id = kRoot;
    for (Action a : seq.actions()) {
        if (a >= static_cast<Action>(num_actions_)) return std::nullopt;
        const TreeNode& n = nodes_[id];
        if (n.first_child == kNoNode) return std::nullopt;
        id = n.first_child + a;
    }
    return id;
}

NodeId PlanningTree::child(NodeId id, Action a) const {
    const TreeNode& n = node(id);
    if (n.first_child == kNoNode || a >= static_cast<Action>(num_actions_)) {
        throw NodeNotPresent("child " + std::to_string(a) + " of '" + sequence(id).to_string() + "' does not exist");
    }
    return n.first_child + a;
}

ActionSeq PlanningTree::sequence(NodeId id) const {
    std::vector<Action> actions(static_cast<std::size_t>(node(id).depth));
    for (NodeId cur = id; cur != kRoot; cur = nodes_[cur].parent) {
        actions[static_cast<std::size_t>(nodes_[cur].depth - 1)] = nodes_[cur].action;
    }
    return ActionSeq(std::move(actions));
}

NodeId PlanningTree::ancestor(NodeId id, int h) const {
    if (h < 0 || h > node(id).depth) throw InvalidArgument("ancestor depth out of range");
    while (nodes_[id].depth > h) id = nodes_[id].parent;
    return id;
}

void PlanningTree::draw(NodeId target, std::int64_t count, Simulator& sim) {
    const TreeNode& t = nodes_[target];
    const State from = nodes_[t.parent].state;
    const Action a = t.action;
    std::optional<ActionSeq> from_seq;
    if (log_) from_seq = sequence(t.parent);
    for (std::int64_t s = 0; s < count; ++s) {
        double r = sim.sample(from, a);
        nodes_[target].stats.add(r);
        if (log_) log_->record(*from_seq, a, r, sim.draws());
    }
}

void PlanningTree::open(NodeId id, std::int64_t m, Simulator& sim, BudgetLedger& ledger) {
    if (id >= nodes_.size()) throw NodeNotPresent("node id " + std::to_string(id) + " not in tree");
    if (m < 1) throw InvalidArgument("an opening needs m >= 1 evaluations");
    if (nodes_[id].opened) throw AlreadyOpened("node '" + sequence(id).to_string() + "' is already opened");
    const int depth = nodes_[id].depth;
    ledger.charge(ledger.opening_cost(depth, m));

    const auto first = static_cast<NodeId>(nodes_.size());
    if (static_cast<std::size_t>(depth + 1) >= levels_.size()) levels_.emplace_back();
    const State parent_state = nodes_[id].state;
    for (int a = 0; a < num_actions_; ++a) {
        TreeNode c;
        c.parent = id;
        c.action = static_cast<Action>(a);
        c.depth = depth + 1;
        c.state = sim.step(parent_state, c.action);
        nodes_.push_back(c);
        levels_[static_cast<std::size_t>(depth + 1)].push_back(first + static_cast<NodeId>(a));
    }
    nodes_[id].first_child = first;
    nodes_[id].opened = true;
    nodes_[id].opened_with_m = m;
    max_opened_depth_ = std::max(max_opened_depth_, depth);
    for (int a = 0; a < num_actions_; ++a) draw(first + static_cast<NodeId>(a), m, sim);
}

void PlanningTree::open(const ActionSeq& seq, std::int64_t m, Simulator& sim, BudgetLedger& ledger) {
    auto id = find(seq);
    if (!id) throw NodeNotPresent("node '" + seq.to_string() + "' is not in the tree");
    open(*id, m, sim, ledger);
}

void PlanningTree::add_samples(NodeId id, std::int64_t count, Simulator& sim, BudgetLedger& ledger) {
    if (id == kRoot || id >= nodes_.size()) throw NodeNotPresent("samples need a non-root tree node");
    if (count < 1) return;
    ledger.charge(ledger.opening_cost(nodes_[id].depth - 1, count));
    draw(id, count, sim);
}

double PlanningTree::u_hat(NodeId id) const {
    const int depth = node(id).depth;
    std::vector<double> means(static_cast<std::size_t>(depth));
    for (NodeId cur = id; cur != kRoot; cur = nodes_[cur].parent) {
        const TreeNode& n = nodes_[cur];
        if (!n.stats.has_mean()) {
            throw MissingSamples("prefix edge of '" + sequence(id).to_string() + "' has no samples");
        }
        means[static_cast<std::size_t>(n.depth - 1)] = n.stats.mean();
    }
    double value = 0.0;
    double discount = 1.0;
    for (double r : means) {
        value += discount * r;
        discount *= gamma_;
    }
    return value;
}

std::vector<double> PlanningTree::u_hat_all() const {
    std::vector<double> discount(levels_.size(), 1.0);
    for (std::size_t d = 1; d < discount.size(); ++d) discount[d] = discount[d - 1] * gamma_;
    std::vector<double> out(nodes_.size(), 0.0);
    for (NodeId id = 1; id < nodes_.size(); ++id) {
        const TreeNode& n = nodes_[id];
        double r = n.stats.mean();
        out[id] = n.depth == 1 ? r : out[n.parent] + discount[static_cast<std::size_t>(n.depth - 1)] * r;
    }
    return out;
}

double PlanningTree::u_hat(const ActionSeq& seq) const {
    auto id = find(seq);
    if (!id) throw MissingSamples("sequence '" + seq.to_string() + "' has unsampled prefixes");
    return u_hat(*id);
}

bool PlanningTree::lex_less(NodeId a, NodeId b) const {
    if (a == b) return false;
    const int da = node(a).depth;
    const int db = node(b).depth;
    NodeId x = a;
    NodeId y = b;
    while (nodes_[x].depth > db) x = nodes_[x].parent;
    while (nodes_[y].depth > da) y = nodes_[y].parent;
    if (x == y) return da < db;
    while (nodes_[x].parent != nodes_[y].parent) {
        x = nodes_[x].parent;
        y = nodes_[y].parent;
    }
    return nodes_[x].action < nodes_[y].action;
}

bool PlanningTree::ranks_before(NodeId a, double value_a, NodeId b, double value_b) const {
    if (value_a != value_b) return value_a > value_b;
    return lex_less(a, b);
}

std::vector<NodeId> PlanningTree::select_top_nodes(int depth, std::size_t count, const Eligibility& eligible) const {
    if (depth < 1) throw InvalidArgument("selection depth must be >= 1");
    std::vector<std::pair<double, NodeId>> pool;
    for (NodeId id : level(depth)) {
        const TreeNode& n = nodes_[id];
        if (n.opened || !eligible(n.stats)) continue;
        pool.emplace_back(u_hat(id), id);
    }
    const std::size_t take = std::min(count, pool.size());
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                      [this](const auto& l, const auto& r) { return ranks_before(l.second, l.first, r.second, r.first); });
    std::vector<NodeId> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(pool[i].second);
    return out;
}

std::optional<NodeId> PlanningTree::best_node(const std::function<bool(NodeId)>& filter) const {
    std::optional<NodeId> best;
    double best_value = 0.0;
    const std::vector<double> values = u_hat_all();
    for (NodeId id = 1; id < nodes_.size(); ++id) {
        if (!filter(id)) continue;
        double v = values[id];
        if (!best || ranks_before(id, v, *best, best_value)) {
            best = id;
            best_value = v;
        }
    }
    return best;
}

double optimistic_bound(double u, int depth, double r_max, double gamma) {
    if (!std::isfinite(r_max)) throw InvalidArgument("R_max must be finite");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0, 1)");
    return u + std::pow(gamma, depth) * r_max / (1.0 - gamma);
}

double b_value(const PlanningTree& tree, NodeId id, double r_max) {
    double u = id == PlanningTree::kRoot ? 0.0 : tree.u_hat(id);
    return optimistic_bound(u, tree.node(id).depth, r_max, tree.gamma());
}

}  // namespace olplan
