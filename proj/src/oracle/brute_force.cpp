#include "olplan/oracle/brute_force.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "olplan/core/errors.hpp"

namespace olplan::oracle {

namespace {

class ValueIteration {
public:
    ValueIteration(const GenerativeModel& model, int horizon)
        : model_(model), k_(model.num_actions()), gamma_(model.gamma()), shift_(model.reward_shift()),
          stride_(static_cast<std::uint64_t>(horizon) + 1) {}

    double reward(State x, Action a) const { return model_.mean_reward(x, a) - shift_; }

    // optimal value of `steps` more steps from x
    double value(State x, int steps) {
        if (steps == 0) return 0.0;
        const std::uint64_t key = x * stride_ + static_cast<std::uint64_t>(steps);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < k_; ++a) best = std::max(best, q(x, static_cast<Action>(a), steps));
        memo_.emplace(key, best);
        return best;
    }

    double q(State x, Action a, int steps) {
        return reward(x, a) + gamma_ * value(model_.next_state(x, a), steps - 1);
    }

private:
    const GenerativeModel& model_;
    int k_;
    double gamma_;
    double shift_;
    std::uint64_t stride_;
    std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace

std::size_t level_index(const ActionSeq& seq, int num_actions) {
    std::size_t idx = 0;
    for (Action a : seq.actions()) idx = idx * static_cast<std::size_t>(num_actions) + a;
    return idx;
}

double OracleTable::u_of(const ActionSeq& seq) const {
    if (seq.depth() > table_depth()) throw InvalidArgument("sequence deeper than the oracle table");
    return u[static_cast<std::size_t>(seq.depth())][level_index(seq, num_actions)];
}

double OracleTable::v_of(const ActionSeq& seq) const {
    if (seq.depth() > table_depth()) throw InvalidArgument("sequence deeper than the oracle table");
    return v[static_cast<std::size_t>(seq.depth())][level_index(seq, num_actions)];
}

void OracleTable::write(std::ostream& out) const {
    nlohmann::json doc = {{"horizon", horizon}, {"gamma", gamma},  {"r_max", r_max},
                          {"num_actions", num_actions}, {"tail", tail}, {"v_star", v_star},
                          {"q_star", q_star}, {"optimal_actions", optimal_actions}, {"u", u}, {"v", v}};
    out << doc.dump(1) << '\n';
}

OracleTable brute_force_values(const GenerativeModel& model, State root, int horizon, double tol, int table_depth) {
    if (horizon < 1) throw InvalidArgument("oracle horizon must be >= 1");
    if (table_depth < 0 || table_depth > horizon) throw InvalidArgument("table depth must lie in [0, horizon]");
    const double gamma = model.gamma();
    OracleTable t;
    t.horizon = horizon;
    t.gamma = gamma;
    t.r_max = model.r_max();
    t.num_actions = model.num_actions();
    t.tail = std::pow(gamma, horizon) * model.r_max() / (1.0 - gamma);
    if (t.tail > tol) {
        throw HorizonTooShallow("tail " + std::to_string(t.tail) + " at horizon " + std::to_string(horizon) +
                                " exceeds tolerance " + std::to_string(tol));
    }

    ValueIteration vi(model, horizon);
    t.v_star = vi.value(root, horizon);
    for (int a = 0; a < t.num_actions; ++a) t.q_star.push_back(vi.q(root, static_cast<Action>(a), horizon));
    const double slack = 1e-12 * std::max(1.0, std::abs(t.v_star));
    for (int a = 0; a < t.num_actions; ++a) {
        if (t.q_star[static_cast<std::size_t>(a)] >= t.v_star - slack) t.optimal_actions.push_back(static_cast<Action>(a));
    }

    // level-order sweep of the table
    std::vector<State> states{root};
    t.u.push_back({0.0});
    t.v.push_back({t.v_star});
    double discount = 1.0;
    for (int h = 1; h <= table_depth; ++h) {
        const auto& prev_u = t.u.back();
        std::vector<State> next;
        std::vector<double> u;
        std::vector<double> v;
        next.reserve(states.size() * static_cast<std::size_t>(t.num_actions));
        for (std::size_t i = 0; i < states.size(); ++i) {
            for (int a = 0; a < t.num_actions; ++a) {
                const State y = model.next_state(states[i], static_cast<Action>(a));
                const double ui = prev_u[i] + discount * vi.reward(states[i], static_cast<Action>(a));
                next.push_back(y);
                u.push_back(ui);
                v.push_back(ui + discount * gamma * vi.value(y, horizon - h));
            }
        }
        discount *= gamma;
        states = std::move(next);
        t.u.push_back(std::move(u));
        t.v.push_back(std::move(v));
    }
    return t;
}

double simple_regret(const OracleTable& oracle, Action action) {
    if (action >= oracle.q_star.size()) throw InvalidArgument("action outside the oracle's root actions");
    const double best = *std::max_element(oracle.q_star.begin(), oracle.q_star.end());
    return std::max(0.0, best - oracle.q_star[action]);
}

double true_prefix_value(const GenerativeModel& model, State root, const ActionSeq& seq) {
    double value = 0.0;
    double discount = 1.0;
    State x = root;
    for (Action a : seq.actions()) {
        value += discount * (model.mean_reward(x, a) - model.reward_shift());
        discount *= model.gamma();
        x = model.next_state(x, a);
    }
    return value;
}

}  // namespace olplan::oracle
