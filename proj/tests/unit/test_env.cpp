#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "olplan/core/errors.hpp"
#include "olplan/env/synthetic_tree.hpp"
#include "olplan/env/toy_mdp.hpp"
#include "olplan/oracle/brute_force.hpp"

using namespace olplan;
using env::ToyMdp;
using env::ToyState;

TEST_CASE("toy MDP switching and staying rewards") {
    const ToyMdp toy;
    Rng rng(0);
    auto [s1, r1] = toy.step({0, 0}, 1, rng);
    CHECK(r1 == 102.0);
    CHECK(s1 == ToyState{1, 0});
    auto [s2, r2] = toy.step({0, 3}, 0, rng);
    CHECK(r2 == 103.0);
    CHECK(s2 == ToyState{0, 4});
    auto [s3, r3] = toy.step({0, 0}, 0, rng);
    CHECK(r3 == 100.0);
    CHECK(s3 == ToyState{0, 1});
}

TEST_CASE("toy MDP true means") {
    const ToyMdp toy;
    CHECK(toy.mean_reward(ToyMdp::encode({0, 5}), 0) == 105.0);
    CHECK(toy.mean_reward(ToyMdp::encode({1, 0}), 0) == 102.0);
    CHECK(ToyMdp::decode(ToyMdp::encode({1, 17})) == ToyState{1, 17});
    CHECK(toy.describe_state(ToyMdp::encode({1, 2})) == "(1,2)");
}

namespace {

env::SyntheticTreeConfig needle_config() {
    env::SyntheticTreeConfig c;
    c.num_actions = 2;
    c.depth = 6;
    c.nu = 1.0;
    c.rho = 0.25;
    c.gamma = 0.8;
    c.seed = 17;
    return c;
}

}  // namespace

TEST_CASE("transitions are deterministic") {
    const ToyMdp toy;
    env::SyntheticTreeConfig c = needle_config();
    c.profile = env::SyntheticProfile::bushy;
    const auto tree = env::SyntheticTree::build(c);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const State xt = ToyMdp::encode({static_cast<int>(rng() % 2), rng() % 50});
        const State xs = rng() % tree.table_size();
        const auto a = static_cast<Action>(rng() % 2);
        REQUIRE(toy.next_state(xt, a) == toy.next_state(xt, a));
        REQUIRE(tree.next_state(xs, a) == tree.next_state(xs, a));
    }
}

TEST_CASE("needle tree has a single near-optimal node per depth") {
    const auto tree = env::SyntheticTree::build(needle_config());
    // independent enumeration of u over A^h
    const double v_star = tree.optimal_value();
    for (int h = 1; h <= 6; ++h) {
        int count = 0;
        const double eps = 3.0 * 1.0 * std::pow(0.25, h);
        for (std::uint64_t idx = 0; idx < (1ULL << h); ++idx) {
            double u = 0.0;
            double disc = 1.0;
            State x = tree.initial_state();
            for (int t = 0; t < h; ++t) {
                const auto a = static_cast<Action>((idx >> (h - 1 - t)) & 1U);
                u += disc * tree.mean_reward(x, a);
                disc *= 0.8;
                x = tree.next_state(x, a);
            }
            if (u >= v_star - eps) ++count;
        }
        CHECK_MESSAGE(count == 1, "depth ", h);
    }
}

TEST_CASE("designated path realises v*") {
    const auto tree = env::SyntheticTree::build(needle_config());
    const auto path = tree.designated_path(200);
    CHECK(oracle::true_prefix_value(tree, tree.initial_state(), path) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tree.path_loss(path.prefix(3)) == doctest::Approx(std::pow(0.25, 3)));
    CHECK(tree.path_loss(ActionSeq{}) == doctest::Approx(1.0));
}

TEST_CASE("smoothness holds everywhere for the universal constants") {
    env::SyntheticTreeConfig c;
    c.num_actions = 2;
    c.depth = 6;
    c.gamma = 0.7;
    c.rho = 0.7;
    c.r_max = 1.0;
    c.nu = 1.0 / 0.3;
    c.profile = env::SyntheticProfile::bushy;
    c.seed = 4;
    const auto tree = env::SyntheticTree::build(c);
    const auto table = oracle::brute_force_values(tree, tree.initial_state(), 60, 1e-6, 6);
    for (int h = 0; h <= 6; ++h) {
        for (std::size_t i = 0; i < table.u[h].size(); ++i) {
            REQUIRE(table.v[h][i] - table.u[h][i] <= c.nu * std::pow(c.rho, h) + 1e-9);
        }
    }
}

TEST_CASE("synthetic trees are reproducible and serialisable") {
    env::SyntheticTreeConfig c = needle_config();
    c.profile = env::SyntheticProfile::bushy;
    c.gap = 0.2;
    const auto a = env::SyntheticTree::build(c);
    const auto b = env::SyntheticTree::build(c);
    std::ostringstream sa;
    std::ostringstream sb;
    a.save(sa);
    b.save(sb);
    CHECK(sa.str() == sb.str());

    std::istringstream in(sa.str());
    const auto loaded = env::SyntheticTree::load(in);
    for (State x = 0; x < a.table_size(); ++x) {
        for (Action act = 0; act < 2; ++act) {
            REQUIRE(loaded.mean_reward(x, act) == a.mean_reward(x, act));
            REQUIRE(loaded.next_state(x, act) == a.next_state(x, act));
        }
    }
}

TEST_CASE("synthetic tree parameter checks") {
    env::SyntheticTreeConfig c = needle_config();
    c.rho = 0.9;  // above gamma
    CHECK_THROWS_AS(env::SyntheticTree::build(c), InfeasibleParameters);
    c = needle_config();
    c.nu = 10.0;  // above R_max/(1-gamma) = 5
    CHECK_THROWS_AS(env::SyntheticTree::build(c), InfeasibleParameters);
    c = needle_config();
    c.gap = 1.5;
    CHECK_THROWS_AS(env::SyntheticTree::build(c), InfeasibleParameters);
    c = needle_config();
    c.depth = 30;
    CHECK_THROWS_AS(env::SyntheticTree::build(c), InfeasibleParameters);
}

TEST_CASE("bushy off-path rewards respect the gap") {
    env::SyntheticTreeConfig c = needle_config();
    c.profile = env::SyntheticProfile::bushy;
    c.gap = 0.5;
    const auto tree = env::SyntheticTree::build(c);
    // every depth-1 edge off the path pays at most half of r*_0
    const Action on = tree.path_action(0);
    const double off = tree.mean_reward(tree.initial_state(), 1 - on);
    CHECK(off <= 0.5 * tree.path_reward(0) + 1e-15);
    CHECK(off >= 0.0);
}
