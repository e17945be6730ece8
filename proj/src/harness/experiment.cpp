#include "olplan/harness/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "olplan/core/errors.hpp"
#include "olplan/env/synthetic_tree.hpp"
#include "olplan/env/toy_mdp.hpp"
#include "olplan/oracle/brute_force.hpp"
#include "olplan/oracle/counting.hpp"
#include "olplan/oracle/coverage.hpp"
#include "olplan/planners/olop.hpp"
#include "olplan/planners/platypoos.hpp"
#include "olplan/planners/sequool.hpp"
#include "olplan/planners/uniform.hpp"

namespace olplan::harness {

namespace {

constexpr std::uint64_t kPlanStream = 1;
constexpr std::uint64_t kExecStream = 2;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

NoiseModel noise_for(const ExperimentConfig& cfg, double b) {
    return b == 0.0 ? NoiseModel() : NoiseModel(cfg.noise, b);
}

int oracle_horizon(const GenerativeModel& model, double tol) {
    const double gamma = model.gamma();
    if (gamma == 0.0) return 1;
    int h = 1;
    while (std::pow(gamma, h) * model.r_max() / (1.0 - gamma) > tol) ++h;
    return h;
}

oracle::OracleTable root_oracle(const ExperimentConfig& cfg, int table_depth = 0) {
    const auto model = make_env(cfg, 0.0);
    const int horizon = std::max(oracle_horizon(*model, cfg.oracle_tol), table_depth);
    return oracle::brute_force_values(*model, model->initial_state(), horizon, cfg.oracle_tol, table_depth);
}

/// Oracles shared by the rows of one sweep; the key ignores the noise.
class OracleCache {
public:
    std::shared_ptr<const oracle::OracleTable> get(const ExperimentConfig& cfg) {
        std::lock_guard lock(mutex_);
        auto& slot = cache_[cfg.env];
        if (!slot) slot = std::make_shared<const oracle::OracleTable>(root_oracle(cfg));
        return slot;
    }

private:
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const oracle::OracleTable>> cache_;
};

RunRecord skeleton(const ExperimentConfig& cfg) {
    RunRecord r;
    r.planner = cfg.planner;
    r.env = cfg.env;
    r.seed = cfg.seed;
    r.n = cfg.budget;
    r.gamma = cfg.gamma;
    r.noise_kind = cfg.b == 0.0 ? NoiseKind::none : cfg.noise;
    r.b = cfg.b;
    r.btilde = cfg.btilde;
    if (cfg.planner == "olop") r.rmaxtilde = cfg.rmaxtilde;
    return r;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

RunRecord run_with(const ExperimentConfig& cfg, OracleCache* cache) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec = skeleton(cfg);
    const auto model = make_env(cfg, cfg.b);
    Simulator sim(*model, derive_seed(cfg.seed, kPlanStream, 0));
    const planners::PlannerResult res = plan(cfg.planner, sim, cfg.budget, cfg.gamma, cfg, cfg.btilde);
    rec.first_action = res.first_action;
    rec.chosen_sequence = res.chosen_sequence.to_string();
    rec.budget_used = res.budget_used;
    rec.max_depth = res.max_opened_depth;
    std::shared_ptr<const oracle::OracleTable> table =
        cache ? cache->get(cfg) : std::make_shared<const oracle::OracleTable>(root_oracle(cfg));
    rec.regret = oracle::simple_regret(*table, res.first_action);
    if (cfg.timing) rec.wallclock_ms = elapsed_ms(start);
    return rec;
}

}  // namespace

std::unique_ptr<GenerativeModel> make_env(const ExperimentConfig& cfg, double b) {
    if (cfg.env == "toy") {
        env::ToyMdpConfig t;
        t.gamma = cfg.gamma;
        t.noise = noise_for(cfg, b);
        t.shift = cfg.shift;
        t.r_max = cfg.r_max;
        return std::make_unique<env::ToyMdp>(t);
    }
    if (cfg.env == "synthetic") {
        env::SyntheticTreeConfig s = cfg.synthetic;
        s.gamma = cfg.gamma;
        s.noise = noise_for(cfg, b);
        s.r_max = cfg.r_max;
        return std::make_unique<env::SyntheticTree>(env::SyntheticTree::build(s));
    }
    throw InvalidConfig("unknown env '" + cfg.env + "'");
}

planners::PlannerResult plan(const std::string& planner, Simulator& sim, std::int64_t n, double gamma,
                             const ExperimentConfig& cfg, std::optional<double> btilde,
                             const planners::RunOptions& opts) {
    if (planner == "platypoos") return planners::run_platypoos(sim, n, gamma, opts);
    if (planner == "sequool") return planners::run_sequool(sim, n, gamma, opts);
    if (planner == "sequool_reset") return planners::run_sequool_reset(sim, n, gamma, opts);
    if (planner == "olop") {
        if (!btilde || !cfg.rmaxtilde) throw InvalidConfig("OLOP requires btilde and rmaxtilde");
        return planners::run_olop(sim, n, gamma, {*btilde, *cfg.rmaxtilde, 0, 0}, opts);
    }
    if (planner == "uniform_naive") return planners::run_uniform_naive(sim, n, cfg.horizon, gamma);
    if (planner == "uniform_good") return planners::run_uniform_good(sim, n, cfg.horizon, gamma);
    throw InvalidConfig("unknown planner '" + planner + "'");
}

RunRecord run_once(const ExperimentConfig& cfg) { return run_with(cfg, nullptr); }

RunRecord rollout(const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    RunRecord rec = skeleton(cfg);
    const auto model = make_env(cfg, cfg.b);
    Rng exec(derive_seed(cfg.seed, kExecStream));
    State x = model->initial_state();
    double ret = 0.0;
    double discount = 1.0;
    std::string path;
    for (int t = 0; t < cfg.rollout_steps; ++t) {
        Simulator sim(*model, derive_seed(cfg.seed, kPlanStream, static_cast<std::uint64_t>(t)), x);
        const planners::PlannerResult res = plan(cfg.planner, sim, cfg.budget, cfg.gamma, cfg, cfg.btilde);
        const Action a = res.first_action;
        if (t == 0) rec.first_action = a;
        rec.actions.push_back(a);
        rec.budget_used = std::max(rec.budget_used, res.budget_used);
        rec.max_depth = std::max(rec.max_depth, res.max_opened_depth);
        ret += discount * (model->sample_reward(x, a, exec) - model->reward_shift());
        discount *= cfg.gamma;
        x = model->next_state(x, a);
    }
    rec.chosen_sequence = ActionSeq(rec.actions).to_string();
    rec.shifted_return = ret;
    if (cfg.timing) rec.wallclock_ms = elapsed_ms(start);
    return rec;
}

std::uint64_t cell_seed(const ExperimentConfig& cfg, std::int64_t n, double b, int rep) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "|%lld|%s|%.17g", static_cast<long long>(n),
                  std::string(to_string(cfg.noise)).c_str(), b);
    return derive_seed(cfg.seed, fnv1a(cfg.env + buf), static_cast<std::uint64_t>(rep));
}

std::vector<RunRecord> sweep(const ExperimentConfig& cfg, int jobs) {
    cfg.validate();
    const std::vector<std::string> planner_list =
        cfg.sweep_planners.empty() ? std::vector{cfg.planner} : cfg.sweep_planners;
    const std::vector<std::int64_t> budgets = cfg.sweep_budgets.empty() ? std::vector{cfg.budget} : cfg.sweep_budgets;
    const std::vector<double> bs = cfg.sweep_b.empty() ? std::vector{cfg.b} : cfg.sweep_b;
    std::vector<std::optional<double>> btildes;
    if (cfg.sweep_btilde.empty()) {
        btildes.push_back(cfg.btilde);
    } else {
        for (double bt : cfg.sweep_btilde) btildes.emplace_back(bt);
    }

    std::vector<ExperimentConfig> cells;
    for (const auto& p : planner_list) {
        for (std::int64_t n : budgets) {
            for (double b : bs) {
                for (const auto& bt : btildes) {
                    for (int rep = 0; rep < cfg.replications; ++rep) {
                        ExperimentConfig c = cfg;
                        c.planner = p;
                        c.budget = n;
                        c.b = b;
                        c.btilde = cfg.sweep_btilde_matches_b ? std::optional<double>(b) : bt;
                        c.seed = cell_seed(cfg, n, b, rep);
                        cells.push_back(std::move(c));
                    }
                }
            }
        }
    }

    OracleCache cache;
    const bool rollouts = cfg.sweep_mode == "rollout";
    std::vector<RunRecord> rows(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            try {
                rows[i] = rollouts ? rollout(cells[i]) : run_with(cells[i], &cache);
            } catch (const std::exception& e) {
                rows[i] = skeleton(cells[i]);
                rows[i].error = e.what();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

nlohmann::json diagnose(const ExperimentConfig& cfg, int jobs) {
    const auto model = make_env(cfg, cfg.b);
    const int depth = cfg.diagnose_depth;
    if (depth < 2) throw InvalidConfig("diagnose.depth must be >= 2");
    double nu = model->r_max() / (1.0 - cfg.gamma);
    double rho = cfg.gamma;
    if (cfg.env == "synthetic") {
        nu = cfg.synthetic.nu;
        rho = cfg.synthetic.rho;
    }
    if (cfg.diagnose_nu) nu = *cfg.diagnose_nu;
    if (cfg.diagnose_rho) rho = *cfg.diagnose_rho;

    const oracle::OracleTable table = root_oracle(cfg, depth);
    const oracle::CountProfile pu = oracle::count_near_optimal(table, oracle::ValueKind::u);
    const oracle::CountProfile pv = oracle::count_near_optimal(table, oracle::ValueKind::v);
    const std::vector<std::int64_t> nu_counts = pu.near_optimal_counts(nu, rho);
    const std::vector<std::int64_t> nv_counts = pv.near_optimal_counts(nu, rho);

    std::vector<double> grid;
    const int points = std::max(2, cfg.diagnose_eps_points);
    const double span = table.v_star - *std::min_element(table.u.back().begin(), table.u.back().end());
    for (int i = 0; i < points; ++i) grid.push_back(span * i / (points - 1));
    const oracle::SandwichReport sandwich = oracle::check_sandwich(pu, pv, cfg.gamma, model->r_max(), grid);

    nlohmann::json out;
    out["env"] = cfg.env;
    out["depth"] = depth;
    out["horizon"] = table.horizon;
    out["tail"] = table.tail;
    out["v_star"] = table.v_star;
    out["q_star"] = table.q_star;
    out["nu"] = nu;
    out["rho"] = rho;
    out["C"] = cfg.diagnose_c;
    out["N_u"] = nu_counts;
    out["N_v"] = nv_counts;
    out["kappa_u"] = oracle::fit_kappa(nu_counts, cfg.diagnose_c);
    out["kappa_v"] = oracle::fit_kappa(nv_counts, cfg.diagnose_c);
    nlohmann::json p2 = {{"verdict", sandwich.pass() ? "pass" : "fail"}, {"checks", sandwich.checks}, {"eps_grid", grid}};
    if (sandwich.first_violation) {
        const auto& v = *sandwich.first_violation;
        p2["violation"] = {{"h", v.h}, {"eps", v.eps}, {"side", oracle::to_string(v.lhs_kind)}, {"lhs", v.lhs}, {"rhs", v.rhs}};
    }
    out["sandwich"] = p2;
    if (cfg.diagnose_coverage_reps > 0) {
        const oracle::CoverageResult cov = oracle::concentration_coverage(
            *model, cfg.diagnose_coverage_budget, cfg.diagnose_delta, cfg.diagnose_coverage_reps, cfg.seed,
            oracle::RadiusForm::p_max, jobs);
        out["coverage"] = {{"n", cfg.diagnose_coverage_budget},
                           {"delta", cfg.diagnose_delta},
                           {"replications", cov.replications},
                           {"violating_replications", cov.violating_replications},
                           {"violation_rate", cov.rate()},
                           {"covered", 1.0 - cov.rate()}};
    }
    return out;
}

}  // namespace olplan::harness
