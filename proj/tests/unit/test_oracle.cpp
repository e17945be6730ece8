#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "olplan/core/errors.hpp"
#include "olplan/env/synthetic_tree.hpp"
#include "olplan/env/toy_mdp.hpp"
#include "olplan/oracle/brute_force.hpp"
#include "olplan/oracle/counting.hpp"
#include "olplan/oracle/coverage.hpp"

using namespace olplan;
using namespace olplan::oracle;

namespace {

env::SyntheticTree random_tree(std::uint64_t seed, int depth = 6, double gamma = 0.8) {
    env::SyntheticTreeConfig c;
    c.num_actions = 2;
    c.depth = depth;
    c.gamma = gamma;
    c.rho = 0.5;
    c.profile = env::SyntheticProfile::bushy;
    c.seed = seed;
    return env::SyntheticTree::build(c);
}

// Exhaustive finite-horizon values by plain recursion, without memoisation.
double plain_value(const GenerativeModel& m, State x, int steps) {
    if (steps == 0) return 0.0;
    double best = -1e300;
    for (int a = 0; a < m.num_actions(); ++a) {
        const auto act = static_cast<Action>(a);
        best = std::max(best, m.mean_reward(x, act) + m.gamma() * plain_value(m, m.next_state(x, act), steps - 1));
    }
    return best;
}

}  // namespace

TEST_CASE("toy MDP optimal value matches the closed form") {
    const env::ToyMdp toy;
    const auto t = brute_force_values(toy, toy.initial_state(), 400, 1e-3);
    CHECK(t.v_star == doctest::Approx(0.95 / (0.05 * 0.05)).epsilon(1e-6));
    // switching once, then staying forever from (1,0)
    CHECK(t.q_star[1] == doctest::Approx(2.0 + 0.95 * 380.0).epsilon(1e-6));
    CHECK(t.optimal_actions == std::vector<Action>{0});
    CHECK(simple_regret(t, 1) == doctest::Approx(17.0).epsilon(1e-6));
    CHECK(simple_regret(t, 0) == 0.0);
    // never switching beats switching forever
    CHECK(t.v_star > 2.0 / 0.05);
}

TEST_CASE("shallow horizons are refused") {
    const env::ToyMdp toy;
    CHECK_THROWS_AS(brute_force_values(toy, toy.initial_state(), 10, 1e-3), HorizonTooShallow);
}

TEST_CASE("zero discount reduces to the best immediate reward") {
    env::ToyMdpConfig tc;
    tc.gamma = 0.0;
    const env::ToyMdp toy(tc);
    const auto t = brute_force_values(toy, toy.initial_state(), 1, 1e-9);
    CHECK(t.v_star == 2.0);
}

TEST_CASE("synthetic optimum equals the constructed path value") {
    const auto tree = random_tree(3);
    const auto t = brute_force_values(tree, tree.initial_state(), 80, 1e-6, 6);
    CHECK(t.v_star == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(t.optimal_actions == std::vector<Action>{tree.path_action(0)});
    for (Action a = 0; a < 2; ++a) {
        const double r = simple_regret(t, a);
        CHECK(r >= 0.0);
        CHECK((r == 0.0) == (a == tree.path_action(0)));
    }
}

TEST_CASE("tables agree with plain recursion and bracket v") {
    const auto tree = random_tree(5, 5, 0.6);
    const int horizon = 40;
    const auto t = brute_force_values(tree, tree.initial_state(), horizon, 1e-6, 5);
    for (int h = 0; h <= 5; ++h) {
        for (std::size_t i = 0; i < t.u[h].size(); ++i) {
            REQUIRE(t.v[h][i] >= t.u[h][i] - 1e-15);
            REQUIRE(t.v[h][i] <= t.v_star + 1e-12);
        }
    }
    // exact comparison at a horizon small enough for plain recursion
    const auto small = brute_force_values(tree, tree.initial_state(), 7, 1.0);
    CHECK(small.v_star == doctest::Approx(plain_value(tree, tree.initial_state(), 7)).epsilon(1e-14));
}

TEST_CASE("horizon H and H + 2 differ by at most the tail") {
    const auto tree = random_tree(9);
    const auto a = brute_force_values(tree, tree.initial_state(), 30, 1.0, 6);
    const auto b = brute_force_values(tree, tree.initial_state(), 32, 1.0, 6);
    for (int h = 0; h <= 6; ++h) {
        for (std::size_t i = 0; i < a.v[h].size(); ++i) REQUIRE(std::abs(a.v[h][i] - b.v[h][i]) <= a.tail);
    }
}

TEST_CASE("count profiles are monotone and saturate") {
    const auto tree = random_tree(11);
    const auto t = brute_force_values(tree, tree.initial_state(), 80, 1e-6, 6);
    const auto pu = count_near_optimal(t, ValueKind::u);
    const auto pv = count_near_optimal(t, ValueKind::v);
    for (int h = 0; h <= 6; ++h) {
        std::int64_t prev = 0;
        for (int i = 0; i <= 50; ++i) {
            const double eps = 0.02 * i;
            const std::int64_t c = pu.count(h, eps);
            REQUIRE(c >= prev);
            REQUIRE(c <= pv.count(h, eps));
            prev = c;
        }
        CHECK(pu.count(h, 10.0) == (1 << h));
        CHECK(pv.count(h, 0.0) >= 1);
    }
}

TEST_CASE("counts agree with an independent enumeration") {
    const auto tree = random_tree(21);
    const int horizon = 70;
    const auto t = brute_force_values(tree, tree.initial_state(), horizon, 1e-6, 6);
    const auto pu = count_near_optimal(t, ValueKind::u);
    const auto pv = count_near_optimal(t, ValueKind::v);
    const double v_star = t.v_star;
    for (int h = 1; h <= 6; ++h) {
        const double eps = 3.0 * std::pow(0.5, h);
        std::int64_t nu = 0;
        std::int64_t nv = 0;
        std::function<void(State, int, double, double)> walk = [&](State x, int d, double u, double disc) {
            if (d == h) {
                // continuation value past the table collapses to the two-state tail
                const double rest = plain_value(tree, x, std::min(horizon - h, 12));
                nu += u >= v_star - eps ? 1 : 0;
                nv += u + disc * rest >= v_star - eps - 1e-6 ? 1 : 0;
                return;
            }
            for (Action a = 0; a < 2; ++a) walk(tree.next_state(x, a), d + 1, u + disc * tree.mean_reward(x, a), disc * 0.8);
        };
        walk(tree.initial_state(), 0, 0.0, 1.0);
        CHECK(pu.count(h, eps) == nu);
        CHECK(pv.count(h, eps) == nv);
    }
}

TEST_CASE("count sandwich holds on random trees") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto tree = random_tree(seed, 8);
        const auto t = brute_force_values(tree, tree.initial_state(), 80, 1e-6, 8);
        std::vector<double> grid;
        for (int i = 0; i < 20; ++i) grid.push_back(i / 19.0);
        const auto rep = check_sandwich(count_near_optimal(t, ValueKind::u), count_near_optimal(t, ValueKind::v), 0.8,
                                        1.0, grid);
        CHECK(rep.pass());
        CHECK(rep.checks == 2 * 9 * 20);
    }
}

TEST_CASE("identical profiles give equal counts on both sides") {
    const std::vector<std::vector<double>> values = {{1.0}, {0.2, 0.9}, {0.1, 0.5, 0.7, 1.0}};
    const CountProfile a(ValueKind::u, 1.0, values);
    const CountProfile b(ValueKind::v, 1.0, values);
    const std::vector<double> grid = {0.0, 0.1, 0.3, 0.5, 1.0};
    for (int h = 0; h <= 2; ++h) {
        for (double eps : grid) CHECK(a.count(h, eps) == b.count(h, eps));
    }
    CHECK(check_sandwich(a, b, 0.5, 1.0, grid).pass());
}

TEST_CASE("a broken sandwich reports its first violation") {
    const CountProfile u(ValueKind::u, 1.0, {{1.0}, {0.0, 0.0}});
    const CountProfile v(ValueKind::v, 1.0, {{1.0}, {1.0, 1.0}});
    const std::vector<double> grid = {0.0};
    const auto rep = check_sandwich(u, v, 0.1, 1.0, grid);
    REQUIRE_FALSE(rep.pass());
    CHECK(rep.first_violation->h == 1);
    CHECK(rep.first_violation->lhs == 2);
    CHECK(rep.first_violation->rhs == 0);
}

TEST_CASE("kappa fits") {
    const std::vector<std::int64_t> ones(8, 1);
    CHECK(fit_kappa(ones, 2.0) == 1.0);
    const std::vector<std::int64_t> flat(8, 3);
    CHECK(fit_kappa(flat, 3.0) == 1.0);
    std::vector<std::int64_t> doubling;
    for (int h = 0; h <= 30; ++h) doubling.push_back(std::int64_t{1} << h);
    double expect = 1.0;
    for (int h = 1; h <= 30; ++h) expect = std::max(expect, std::pow(std::pow(2.0, h) / 1.5, 1.0 / h));
    CHECK(fit_kappa(doubling, 1.5) == doctest::Approx(expect));
    CHECK(fit_kappa(doubling, 1.5) > 1.95);
    CHECK_THROWS_AS(fit_kappa(ones, 1.0), InvalidArgument);
}

TEST_CASE("kappa is one on a needle tree") {
    env::SyntheticTreeConfig c;
    c.num_actions = 2;
    c.depth = 6;
    c.gamma = 0.8;
    c.rho = 0.25;
    c.seed = 2;
    const auto tree = env::SyntheticTree::build(c);
    const auto t = brute_force_values(tree, tree.initial_state(), 80, 1e-6, 6);
    const auto counts = count_near_optimal(t, ValueKind::u).near_optimal_counts(1.0, 0.25);
    for (int h = 1; h <= 6; ++h) CHECK(counts[h] == 1);
    CHECK(fit_kappa(counts, 2.0) == 1.0);
}

TEST_CASE("coverage radius and the noiseless case") {
    CHECK(xi_radius(5.0, 2, 1000, 0.1, 1) == doctest::Approx(5.0 * std::sqrt(2.0 * std::log(40000.0) / 4.0)));
    CHECK(xi_radius(5.0, 0, 200, 0.1, 0) == 0.0);
    CHECK(xi_radius(5.0, 0, 200, 0.1, 0, RadiusForm::p_max_plus) > 0.0);
    const env::ToyMdp toy;
    const auto cov = concentration_coverage(toy, 2000, 0.1, 20, 1);
    CHECK(cov.rate() == 0.0);
    CHECK(cov.checked_pairs > 0);
    env::ToyMdpConfig cfg;
    cfg.noise = NoiseModel(NoiseKind::uniform, 5.0);
    const env::ToyMdp noisy(cfg);
    const auto a = concentration_coverage(noisy, 2000, 0.1, 12, 1, RadiusForm::p_max, 1);
    const auto b = concentration_coverage(noisy, 2000, 0.1, 12, 1, RadiusForm::p_max, 3);
    CHECK(a.violating_replications == b.violating_replications);
    CHECK(a.checked_pairs == b.checked_pairs);
}
