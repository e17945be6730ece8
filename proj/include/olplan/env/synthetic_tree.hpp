#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "olplan/core/model.hpp"

namespace olplan::env {

enum class SyntheticProfile {
    needle,  ///< every off-path reward is zero; near-optimal sets stay bounded (κ = 1)
    bushy,   ///< off-path rewards are random fractions of the on-path reward (κ > 1)
};

std::string_view to_string(SyntheticProfile p);
SyntheticProfile parse_profile(std::string_view text);

struct SyntheticTreeConfig {
    int num_actions = 2;
    int depth = 6;  ///< H: depth of the explicit reward table
    double nu = 1.0;
    double rho = 0.5;
    double gamma = 0.8;
    double r_max = 1.0;
    SyntheticProfile profile = SyntheticProfile::needle;
    /// Bushy profile: a deviating edge at time t pays at most (1 - gap) r*_t.
    double gap = 0.0;
    std::uint64_t seed = 0;
    NoiseModel noise;
};

/// K-ary tree with an explicit mean-reward table to depth H and a designated
/// optimal path. The edge leaving the path's depth-t node pays
/// r*_t = ν(1-ρ)(ρ/γ)^t, so the path has value v* = ν and its depth-h prefix
/// falls short of v* by exactly νρ^h. Past depth H the path continues (actions
/// drawn from the seed) and every off-path reward is zero.
class SyntheticTree final : public GenerativeModel {
public:
    /// Throws InfeasibleParameters when ρ ∉ (0, γ], ν ∉ (0, R_max/(1-γ)],
    /// ν(1-ρ) > R_max, gap ∉ [0, 1] or the table exceeds 10^7 nodes.
    static SyntheticTree build(const SyntheticTreeConfig& cfg);

    int num_actions() const override { return cfg_.num_actions; }
    double gamma() const override { return cfg_.gamma; }
    double r_max() const override { return cfg_.r_max; }
    State initial_state() const override { return 0; }
    State next_state(State x, Action a) const override;
    double mean_reward(State x, Action a) const override;
    const NoiseModel& noise() const override { return cfg_.noise; }
    std::string describe_state(State x) const override;

    [[nodiscard]] const SyntheticTreeConfig& config() const { return cfg_; }
    /// Closed-form value of the designated path.
    [[nodiscard]] double optimal_value() const { return cfg_.nu; }
    [[nodiscard]] double path_reward(int t) const;
    [[nodiscard]] Action path_action(int t) const;
    [[nodiscard]] ActionSeq designated_path(int length) const;
    /// v* - u(seq), summed as per-step differences plus the closed-form tail
    /// so that tiny losses deep in the tree keep their precision.
    [[nodiscard]] double path_loss(const ActionSeq& seq) const;

    /// Text fixture: header lines, then "node <depth> <seq> <reward>" in
    /// depth order for every table node.
    void save(std::ostream& out) const;
    static SyntheticTree load(std::istream& in);

    [[nodiscard]] std::size_t table_size() const { return rewards_.size(); }

private:
    explicit SyntheticTree(const SyntheticTreeConfig& cfg);
    [[nodiscard]] int state_depth(State x) const;
    [[nodiscard]] bool state_on_path(State x) const;
    [[nodiscard]] State beyond_state(int depth, bool on_path) const;

    SyntheticTreeConfig cfg_;
    std::vector<std::uint64_t> level_offset_;  ///< level-order id of the first node of each depth
    std::vector<std::uint64_t> path_index_;    ///< index within its level of the path node at each depth
    std::vector<Action> path_actions_;         ///< table part of the path
    std::vector<double> rewards_;              ///< mean reward of the edge entering each table node
};

}  // namespace olplan::env
