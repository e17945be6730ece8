#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "olplan/core/errors.hpp"
#include "olplan/env/synthetic_tree.hpp"
#include "olplan/env/toy_mdp.hpp"
#include "olplan/oracle/brute_force.hpp"
#include "olplan/planners/olop.hpp"
#include "olplan/planners/platypoos.hpp"
#include "olplan/planners/sequool.hpp"
#include "olplan/planners/uniform.hpp"

using namespace olplan;
using namespace olplan::planners;

namespace {

env::SyntheticTree needle(int depth, double rho, double gamma, std::uint64_t seed, NoiseModel noise = {}) {
    env::SyntheticTreeConfig c;
    c.num_actions = 2;
    c.depth = depth;
    c.rho = rho;
    c.gamma = gamma;
    c.seed = seed;
    c.noise = noise;
    return env::SyntheticTree::build(c);
}

// harmonic sum from scratch, largest terms first
double harmonic_ref(std::int64_t n) {
    double s = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) s += 1.0 / double(k);
    return s;
}

}  // namespace

TEST_CASE("SequOOL depth budget") {
    CHECK(harmonic_number(100) == doctest::Approx(5.187).epsilon(1e-3));
    CHECK(sequool_h_max(100) == 19);
    CHECK(sequool_h_max(1) == 1);
    for (std::int64_t n : {2, 10, 77, 1000, 12345}) {
        CHECK(sequool_h_max(n) == static_cast<std::int64_t>(std::floor(double(n) / harmonic_ref(n))));
    }
}

TEST_CASE("SequOOL reset quotas") {
    const std::vector<std::int64_t> expect = {100, 25, 11, 6, 4, 2, 2, 1, 1, 1};
    for (int h = 1; h <= 10; ++h) CHECK(sequool_quota(100, h, AccessMode::reset) == expect[h - 1]);
    CHECK(sequool_quota(100, 11, AccessMode::reset) == 0);
    CHECK(sequool_quota(100, 7, AccessMode::free) == 14);
}

TEST_CASE("SequOOL with n = 100 opens at most K depth-1 nodes and finds the optimal action") {
    const auto tree = needle(10, 0.25, 0.8, 3);
    Simulator sim(tree, 0);
    const auto r = run_sequool(sim, 100, 0.8, {true, nullptr});
    int depth1 = 0;
    for (const auto& e : r.trace) depth1 += e.h == 1 ? 1 : 0;
    CHECK(depth1 == 2);
    const auto oracle = oracle::brute_force_values(tree, tree.initial_state(), 80, 1e-6);
    CHECK(oracle::simple_regret(oracle, r.first_action) == 0.0);
    CHECK(r.budget_used <= 100);
    CHECK(r.max_opened_depth <= 19);
}

TEST_CASE("SequOOL with n = 1 opens only the root") {
    const auto tree = needle(4, 0.25, 0.8, 3);
    Simulator sim(tree, 0);
    const auto r = run_sequool(sim, 1, 0.8);
    CHECK(r.max_opened_depth == 0);
    CHECK(r.chosen_sequence == ActionSeq{tree.path_action(0)});
}

TEST_CASE("SequOOL rejects noise and tiny budgets") {
    const auto noisy = needle(4, 0.25, 0.8, 3, NoiseModel(NoiseKind::uniform, 0.1));
    Simulator sim(noisy, 0);
    CHECK_THROWS_AS(run_sequool(sim, 100, 0.8), NoisyEnvironment);
    const auto clean = needle(4, 0.25, 0.8, 3);
    Simulator sim2(clean, 0);
    CHECK_THROWS_AS(run_sequool(sim2, 0, 0.8), BudgetTooSmall);
}

TEST_CASE("reset variant never goes deeper than the free one") {
    env::SyntheticTreeConfig c;
    c.num_actions = 3;
    c.depth = 6;
    c.gamma = 0.9;
    c.rho = 0.7;
    c.profile = env::SyntheticProfile::bushy;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        c.seed = seed;
        const auto tree = env::SyntheticTree::build(c);
        for (std::int64_t n : {50, 300, 2000}) {
            Simulator s1(tree, 0);
            Simulator s2(tree, 0);
            CHECK(run_sequool_reset(s1, n, 0.9).max_opened_depth <= run_sequool(s2, n, 0.9).max_opened_depth);
        }
    }
}

TEST_CASE("schedule values at n = 1000") {
    const auto s = platypoos_schedule(1000, 0.95);
    CHECK(s.h_max == 4);
    CHECK(s.p_max == 2);
    CHECK(s.top(2) == 0);
    CHECK(s.evals(2, 0) == 2);
    CHECK(s.quota(2, 0) == 1);
    CHECK(s.threshold(2, 0) == 1);
    CHECK(s.threshold(1, 2) == 0);
    CHECK(s.top(3) == -1);  // ⌈9·0.95^6⌉ = 7 > 4
    CHECK_THROWS_AS(platypoos_schedule(8, 0.9), BudgetTooSmall);
}

TEST_CASE("schedule formulas against a direct evaluation") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
        const auto n = static_cast<std::int64_t>(200 + rng() % 200000);
        const double gamma = std::uniform_real_distribution<double>(0.3, 0.99)(rng);
        const auto s = platypoos_schedule(n, gamma);
        const double l = std::log2(double(n)) + 1.0;
        REQUIRE(s.h_max == static_cast<std::int64_t>(double(n) / (2.0 * l * l)));
        REQUIRE(s.p_max == static_cast<int>(std::floor(std::log2(double(s.h_max)))));
        for (int h = 1; h <= std::min<std::int64_t>(s.h_max, 40); ++h) {
            const double d = std::ceil(h * h * std::pow(gamma, 2 * h));
            const int top = d > double(s.h_max) ? -1 : static_cast<int>(std::floor(std::log2(double(s.h_max) / d)));
            REQUIRE(s.top(h) == top);
            for (int p = 0; p <= std::max(top, 0); ++p) {
                const double m = std::ceil(h * std::pow(2.0, p) * std::pow(gamma, 2 * h));
                REQUIRE(s.evals(h, p) == static_cast<std::int64_t>(std::max(1.0, m)));
                REQUIRE(s.quota(h, p) == s.h_max / (h * s.evals(h, p)));
                // children of a node opened at (h, p) become eligible at (h+1, p)
                REQUIRE(s.threshold(h + 1, p) == s.evals(h, p));
            }
        }
    }
}

TEST_CASE("PlaTγPOOS charge stays within n + 1 and per-depth limits") {
    env::ToyMdpConfig cfg;
    cfg.noise = NoiseModel(NoiseKind::uniform, 10.0);
    const env::ToyMdp toy(cfg);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Simulator sim(toy, seed);
        const auto r = run_platypoos(sim, 1000, 0.95, {true, nullptr});
        REQUIRE(r.budget_used <= 1001);
        const auto s = platypoos_schedule(1000, 0.95);
        std::map<int, std::int64_t> per_depth;
        for (const auto& e : r.trace) {
            if (e.kind == TraceEvent::Kind::open) per_depth[e.h] += e.m;
        }
        for (const auto& [h, charge] : per_depth) REQUIRE(charge <= (s.p_max + 1) * s.h_max / h);
        REQUIRE(r.first_action == r.chosen_sequence.front());
        REQUIRE(r.max_opened_depth <= s.h_max);
    }
}

TEST_CASE("PlaTγPOOS depth-1 nodes receive h_max samples") {
    const auto tree = needle(6, 0.25, 0.8, 1, NoiseModel(NoiseKind::uniform, 0.2));
    Simulator sim(tree, 4);
    const auto r = run_platypoos(sim, 3000, 0.8);
    const auto s = platypoos_schedule(3000, 0.8);
    for (Action a = 0; a < 2; ++a) {
        CHECK(r.tree->node(r.tree->child(PlanningTree::kRoot, a)).stats.count() >= s.h_max);
    }
    CHECK(r.candidates.size() == static_cast<std::size_t>(s.p_max) + 1);
}

TEST_CASE("noiseless PlaTγPOOS recommends the optimal first action") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto tree = needle(8, 0.25, 0.8, seed);
        Simulator sim(tree, 0);
        const auto r = run_platypoos(sim, 2000, 0.8);
        const auto oracle = oracle::brute_force_values(tree, tree.initial_state(), 80, 1e-6);
        CHECK(oracle::simple_regret(oracle, r.first_action) == 0.0);
    }
}

TEST_CASE("OLOP episode sizing") {
    const auto [m, l] = olop_episodes(10000, 0.8);
    CHECK(m * l <= 10000);
    CHECK(l == std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::log(double(m)) / (2 * std::log(1 / 0.8))))));
    // the next M would not fit
    const auto l_next = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(std::log(double(m + 1)) / (2 * std::log(1 / 0.8)))));
    CHECK((m + 1) * l_next > 10000);
}

TEST_CASE("OLOP first episode is the lexicographically smallest sequence") {
    const auto tree = needle(6, 0.25, 0.8, 2);
    Simulator sim(tree, 0);
    const auto r = run_olop(sim, 200, 0.8, {1.0, 1.0, 0, 0}, {true, nullptr});
    REQUIRE_FALSE(r.trace.empty());
    const auto& first = r.trace.front().node;
    for (Action a : first.actions()) CHECK(a == 0);
    CHECK(r.budget_used <= 200);
}

TEST_CASE("OLOP on a depth-1 problem is greedy without noise") {
    env::SyntheticTreeConfig c;
    c.num_actions = 3;
    c.depth = 1;
    c.gamma = 0.5;
    c.rho = 0.5;
    c.nu = 1.0;
    c.profile = env::SyntheticProfile::bushy;
    c.seed = 8;
    const auto tree = env::SyntheticTree::build(c);
    Simulator sim(tree, 0);
    const auto r = run_olop(sim, 300, 0.5, {0.0, 1.0, 0, 1});
    CHECK(r.first_action == tree.path_action(0));
}

TEST_CASE("OLOP configuration errors") {
    const auto tree = needle(4, 0.25, 0.8, 2);
    Simulator sim(tree, 0);
    CHECK_THROWS_AS(run_olop(sim, 100, 0.8, {-1.0, 1.0, 0, 0}), InvalidConfig);
    CHECK_THROWS_AS(run_olop(sim, 100, 0.8, {1.0, 0.0, 0, 0}), InvalidConfig);
    CHECK_THROWS_AS(run_olop(sim, 100, 0.8, {1.0, 1.0, 100, 100}), InvalidConfig);
}

TEST_CASE("uniform planners pool or isolate prefix samples") {
    const auto tree = needle(6, 0.25, 0.8, 2);
    Simulator sim(tree, 0);
    const auto good = uniform_estimates(sim, 100, 3, 0.8, true);
    CHECK(good.prefix_count[1] == 4);
    CHECK(good.prefix_count[3] == 1);
    Simulator sim2(tree, 0);
    const auto naive = uniform_estimates(sim2, 100, 3, 0.8, false);
    CHECK(naive.prefix_count[1] == 1);
    Simulator s3(tree, 0);
    Simulator s4(tree, 0);
    CHECK(run_uniform_naive(s3, 100, 3, 0.8).chosen_sequence == run_uniform_good(s4, 100, 3, 0.8).chosen_sequence);
    Simulator s5(tree, 0);
    CHECK_THROWS_AS(run_uniform_good(s5, 10, 5, 0.8), InfeasibleHorizon);
}

TEST_CASE("pooled estimates have lower variance") {
    env::ToyMdpConfig cfg;
    cfg.noise = NoiseModel(NoiseKind::uniform, 10.0);
    const env::ToyMdp toy(cfg);
    std::vector<double> naive;
    std::vector<double> good;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Simulator s1(toy, seed);
        Simulator s2(toy, seed);
        naive.push_back(uniform_estimates(s1, 100, 4, 0.95, false).leaf_u_hat[0]);
        good.push_back(uniform_estimates(s2, 100, 4, 0.95, true).leaf_u_hat[0]);
    }
    auto var = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m += x;
        m /= double(v.size());
        double s = 0.0;
        for (double x : v) s += (x - m) * (x - m);
        return s / double(v.size() - 1);
    };
    CHECK(var(good) < var(naive));
}
