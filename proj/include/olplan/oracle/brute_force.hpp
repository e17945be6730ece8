#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "olplan/core/model.hpp"

namespace olplan::oracle {

/// Exact truncated values of an environment from one root state. Rewards are
/// taken without the model's reward shift.
struct OracleTable {
    int horizon = 0;
    double gamma = 0.0;
    double r_max = 0.0;
    int num_actions = 0;
    double tail = 0.0;  ///< γ^H R_max / (1-γ), the certified gap v - v_H
    double v_star = 0.0;
    std::vector<double> q_star;  ///< per root action
    std::vector<Action> optimal_actions;
    /// Per depth h <= table_depth, indexed by the base-K value of the sequence.
    std::vector<std::vector<double>> u;
    std::vector<std::vector<double>> v;

    [[nodiscard]] int table_depth() const { return static_cast<int>(u.size()) - 1; }
    [[nodiscard]] double u_of(const ActionSeq& seq) const;
    [[nodiscard]] double v_of(const ActionSeq& seq) const;
    /// JSON document with every field.
    void write(std::ostream& out) const;
};

/// Bottom-up values V_k(x) = max_a r(x,a) + γ V_{k-1}(f(x,a)) memoised per
/// (state, k). Throws HorizonTooShallow when the tail exceeds `tol`, and
/// InvalidArgument when table_depth > horizon.
OracleTable brute_force_values(const GenerativeModel& model, State root, int horizon, double tol,
                               int table_depth = 0);

/// max_a Q*(x,a) - Q*(x,action), clamped at 0.
double simple_regret(const OracleTable& oracle, Action action);

/// u(seq) from the true means, shift removed.
double true_prefix_value(const GenerativeModel& model, State root, const ActionSeq& seq);

/// Index of `seq` within its depth level.
std::size_t level_index(const ActionSeq& seq, int num_actions);

}  // namespace olplan::oracle
