#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "olplan/core/action_seq.hpp"
#include "olplan/core/budget_ledger.hpp"
#include "olplan/core/model.hpp"

namespace olplan {

/// Samples of the action entering a node: count T, sum and mean r̂.
class EdgeStats {
public:
    void add(double reward);

    [[nodiscard]] std::int64_t count() const { return count_; }
    [[nodiscard]] double reward_sum() const { return sum_; }
    [[nodiscard]] bool has_mean() const { return count_ > 0; }
    /// r̂; throws MissingSamples when T = 0. Kept as a running mean so that
    /// identical samples reproduce their value exactly.
    [[nodiscard]] double mean() const;

private:
    std::int64_t count_ = 0;
    double sum_ = 0.0;
    double mean_ = 0.0;
};

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TreeNode {
    NodeId parent = kNoNode;
    Action action = 0;  ///< last action of the sequence; unused for the root
    int depth = 0;
    State state = 0;  ///< cached successor state
    EdgeStats stats;
    bool opened = false;
    std::int64_t opened_with_m = 0;
    NodeId first_child = kNoNode;  ///< children occupy [first_child, first_child + K)
};

/// Line-delimited JSON record of every generative call made through a tree:
/// {"seq": parent sequence, "action", "reward", "draw": stream index}.
class SampleLog {
public:
    explicit SampleLog(std::ostream& out) : out_(&out) {}
    void record(const ActionSeq& from, Action action, double reward, std::uint64_t draw);

private:
    std::ostream* out_;
};

/// Expanded tree of action sequences. Children of a node exist once it has
/// been opened; each node is opened at most once.
class PlanningTree {
public:
    static constexpr NodeId kRoot = 0;
    using Eligibility = std::function<bool(const EdgeStats&)>;

    PlanningTree(int num_actions, double gamma, State root_state);

    [[nodiscard]] int num_actions() const { return num_actions_; }
    [[nodiscard]] double gamma() const { return gamma_; }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }
    [[nodiscard]] const TreeNode& node(NodeId id) const { return nodes_.at(id); }
    [[nodiscard]] int max_depth() const { return static_cast<int>(levels_.size()) - 1; }
    [[nodiscard]] int max_opened_depth() const { return max_opened_depth_; }
    [[nodiscard]] std::span<const NodeId> level(int depth) const;

    [[nodiscard]] std::optional<NodeId> find(const ActionSeq& seq) const;
    [[nodiscard]] NodeId child(NodeId id, Action a) const;
    [[nodiscard]] ActionSeq sequence(NodeId id) const;
    /// Node of depth `h` on the path to `id`.
    [[nodiscard]] NodeId ancestor(NodeId id, int h) const;

    /// Opens `id` with m evaluations per child. Charges the ledger before any
    /// sample is drawn; throws AlreadyOpened or BudgetExhausted otherwise.
    void open(NodeId id, std::int64_t m, Simulator& sim, BudgetLedger& ledger);
    /// Same, addressed by sequence; throws NodeNotPresent for unknown nodes.
    void open(const ActionSeq& seq, std::int64_t m, Simulator& sim, BudgetLedger& ledger);

    /// Draws `count` extra samples of the action entering `id`.
    void add_samples(NodeId id, std::int64_t count, Simulator& sim, BudgetLedger& ledger);

    /// û(a) = Σ_t γ^t r̂_t(a); throws MissingSamples if a prefix edge has T = 0.
    [[nodiscard]] double u_hat(NodeId id) const;
    [[nodiscard]] double u_hat(const ActionSeq& seq) const;
    /// û of every node indexed by NodeId (root = 0), bit-identical to u_hat().
    [[nodiscard]] std::vector<double> u_hat_all() const;

    /// Lexicographic order on the sequences of two nodes.
    [[nodiscard]] bool lex_less(NodeId a, NodeId b) const;
    /// Ranking used by every argmax: higher value first, then lexicographic.
    [[nodiscard]] bool ranks_before(NodeId a, double value_a, NodeId b, double value_b) const;

    /// Up to `count` unopened depth-`depth` nodes passing `eligible`, best û
    /// first with lexicographic tie-break.
    [[nodiscard]] std::vector<NodeId> select_top_nodes(int depth, std::size_t count,
                                                       const Eligibility& eligible) const;
    /// Highest-û non-root node accepted by `filter`, if any.
    [[nodiscard]] std::optional<NodeId> best_node(const std::function<bool(NodeId)>& filter) const;

    void set_sample_log(SampleLog* log) { log_ = log; }

private:
    void draw(NodeId target, std::int64_t count, Simulator& sim);

    int num_actions_;
    double gamma_;
    std::vector<TreeNode> nodes_;
    std::vector<std::vector<NodeId>> levels_;
    int max_opened_depth_ = -1;
    SampleLog* log_ = nullptr;
};

/// b(a) = u(a) + γ^h R_max / (1 - γ).
double optimistic_bound(double u, int depth, double r_max, double gamma);
/// b-value of a tree node from its û; equals b(a) when rewards are noiseless.
double b_value(const PlanningTree& tree, NodeId id, double r_max);

}  // namespace olplan
