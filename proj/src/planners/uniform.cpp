#include "olplan/planners/uniform.hpp"

#include "olplan/core/errors.hpp"

namespace olplan::planners {

namespace {

std::int64_t episode_count(int k, int horizon, std::int64_t evaluations) {
    std::int64_t count = 1;
    for (int h = 0; h < horizon; ++h) {
        if (count > evaluations / k) return -1;
        count *= k;
    }
    return count;
}

std::vector<Action> digits(std::int64_t index, int k, int horizon) {
    std::vector<Action> out(static_cast<std::size_t>(horizon));
    for (int t = horizon - 1; t >= 0; --t) {
        out[static_cast<std::size_t>(t)] = static_cast<Action>(index % k);
        index /= k;
    }
    return out;
}

PlannerResult run(Simulator& sim, std::int64_t n, int horizon, double gamma, bool pooled) {
    const UniformEstimates est = uniform_estimates(sim, n, horizon, gamma, pooled);
    std::size_t best = 0;
    for (std::size_t i = 1; i < est.leaf_u_hat.size(); ++i) {
        if (est.leaf_u_hat[i] > est.leaf_u_hat[best]) best = i;
    }
    const int k = est.num_actions;
    PlannerResult res;
    res.planner = pooled ? "uniform_good" : "uniform_naive";
    res.chosen_sequence = ActionSeq(digits(static_cast<std::int64_t>(best), k, horizon));
    res.first_action = res.chosen_sequence.front();
    res.budget_limit = n;
    res.evaluations = static_cast<std::int64_t>(sim.draws());
    res.budget_used = (res.evaluations + k - 1) / k;
    res.max_opened_depth = horizon - 1;
    return res;
}

}  // namespace

UniformEstimates uniform_estimates(Simulator& sim, std::int64_t n, int horizon, double gamma, bool pooled) {
    if (horizon < 1) throw InfeasibleHorizon("horizon must be >= 1");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in [0, 1)");
    const int k = sim.num_actions();
    const std::int64_t evaluations = n * k;
    const std::int64_t episodes = episode_count(k, horizon, evaluations);
    if (episodes < 0 || episodes * horizon > evaluations) {
        throw InfeasibleHorizon("K^H episodes of length " + std::to_string(horizon) + " exceed " +
                                std::to_string(evaluations) + " evaluations");
    }

    UniformEstimates est;
    est.horizon = horizon;
    est.num_actions = k;
    est.prefix_count.assign(static_cast<std::size_t>(horizon) + 1, 1);
    if (pooled) {
        for (int h = horizon - 1; h >= 0; --h) {
            est.prefix_count[static_cast<std::size_t>(h)] = est.prefix_count[static_cast<std::size_t>(h) + 1] * k;
        }
    }
    est.prefix_count[0] = 0;

    // samples[t][i]: reward at step t of episode i
    std::vector<std::vector<double>> samples(static_cast<std::size_t>(horizon),
                                             std::vector<double>(static_cast<std::size_t>(episodes)));
    for (std::int64_t i = 0; i < episodes; ++i) {
        State x = sim.root();
        const std::vector<Action> seq = digits(i, k, horizon);
        for (int t = 0; t < horizon; ++t) {
            const Action a = seq[static_cast<std::size_t>(t)];
            samples[static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] = sim.sample(x, a);
            x = sim.step(x, a);
        }
    }

    est.leaf_u_hat.assign(static_cast<std::size_t>(episodes), 0.0);
    double discount = 1.0;
    for (int t = 0; t < horizon; ++t) {
        const auto& row = samples[static_cast<std::size_t>(t)];
        // episodes sharing the depth-(t+1) prefix form contiguous blocks
        const std::int64_t block = pooled ? est.prefix_count[static_cast<std::size_t>(t) + 1] : 1;
        for (std::int64_t start = 0; start < episodes; start += block) {
            double mean = 0.0;
            for (std::int64_t j = start; j < start + block; ++j) {
                mean += (row[static_cast<std::size_t>(j)] - mean) / static_cast<double>(j - start + 1);
            }
            for (std::int64_t j = start; j < start + block; ++j) {
                est.leaf_u_hat[static_cast<std::size_t>(j)] += discount * mean;
            }
        }
        discount *= gamma;
    }
    return est;
}

PlannerResult run_uniform_naive(Simulator& sim, std::int64_t n, int horizon, double gamma) {
    return run(sim, n, horizon, gamma, false);
}

PlannerResult run_uniform_good(Simulator& sim, std::int64_t n, int horizon, double gamma) {
    return run(sim, n, horizon, gamma, true);
}

}  // namespace olplan::planners
