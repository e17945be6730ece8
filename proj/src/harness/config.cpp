#include "olplan/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "olplan/core/errors.hpp"

namespace olplan::harness {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& v) {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return d;
}

template <typename Int>
Int to_int(const std::string& v) {
    Int out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) throw std::invalid_argument("not an integer");
    return out;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("expected true or false");
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"planner", [](ExperimentConfig& c, const std::string& v) { c.planner = v; }},
        {"planner.btilde", [](ExperimentConfig& c, const std::string& v) { c.btilde = to_double(v); }},
        {"planner.rmaxtilde", [](ExperimentConfig& c, const std::string& v) { c.rmaxtilde = to_double(v); }},
        {"planner.horizon", [](ExperimentConfig& c, const std::string& v) { c.horizon = to_int<int>(v); }},
        {"env", [](ExperimentConfig& c, const std::string& v) { c.env = v; }},
        {"env.gamma", [](ExperimentConfig& c, const std::string& v) { c.gamma = to_double(v); }},
        {"env.noise", [](ExperimentConfig& c, const std::string& v) { c.noise = parse_noise_kind(v); }},
        {"env.b", [](ExperimentConfig& c, const std::string& v) { c.b = to_double(v); }},
        {"env.shift", [](ExperimentConfig& c, const std::string& v) { c.shift = to_double(v); }},
        {"env.rmax", [](ExperimentConfig& c, const std::string& v) { c.r_max = to_double(v); }},
        {"env.synthetic.actions", [](ExperimentConfig& c, const std::string& v) { c.synthetic.num_actions = to_int<int>(v); }},
        {"env.synthetic.depth", [](ExperimentConfig& c, const std::string& v) { c.synthetic.depth = to_int<int>(v); }},
        {"env.synthetic.nu", [](ExperimentConfig& c, const std::string& v) { c.synthetic.nu = to_double(v); }},
        {"env.synthetic.rho", [](ExperimentConfig& c, const std::string& v) { c.synthetic.rho = to_double(v); }},
        {"env.synthetic.profile", [](ExperimentConfig& c, const std::string& v) { c.synthetic.profile = env::parse_profile(v); }},
        {"env.synthetic.gap", [](ExperimentConfig& c, const std::string& v) { c.synthetic.gap = to_double(v); }},
        {"env.synthetic.seed", [](ExperimentConfig& c, const std::string& v) { c.synthetic.seed = to_int<std::uint64_t>(v); }},
        {"budget", [](ExperimentConfig& c, const std::string& v) { c.budget = to_int<std::int64_t>(v); }},
        {"seed", [](ExperimentConfig& c, const std::string& v) { c.seed = to_int<std::uint64_t>(v); }},
        {"replications", [](ExperimentConfig& c, const std::string& v) { c.replications = to_int<int>(v); }},
        {"rollout.steps", [](ExperimentConfig& c, const std::string& v) { c.rollout_steps = to_int<int>(v); }},
        {"oracle.tol", [](ExperimentConfig& c, const std::string& v) { c.oracle_tol = to_double(v); }},
        {"sweep.mode", [](ExperimentConfig& c, const std::string& v) { c.sweep_mode = v; }},
        {"sweep.planners", [](ExperimentConfig& c, const std::string& v) { c.sweep_planners = split_list(v); }},
        {"sweep.budgets",
         [](ExperimentConfig& c, const std::string& v) {
             c.sweep_budgets.clear();
             for (const auto& s : split_list(v)) c.sweep_budgets.push_back(to_int<std::int64_t>(s));
         }},
        {"sweep.b",
         [](ExperimentConfig& c, const std::string& v) {
             c.sweep_b.clear();
             for (const auto& s : split_list(v)) c.sweep_b.push_back(to_double(s));
         }},
        {"sweep.btilde",
         [](ExperimentConfig& c, const std::string& v) {
             c.sweep_btilde.clear();
             c.sweep_btilde_matches_b = v == "b";
             if (c.sweep_btilde_matches_b) return;
             for (const auto& s : split_list(v)) c.sweep_btilde.push_back(to_double(s));
         }},
        {"diagnose.depth", [](ExperimentConfig& c, const std::string& v) { c.diagnose_depth = to_int<int>(v); }},
        {"diagnose.nu", [](ExperimentConfig& c, const std::string& v) { c.diagnose_nu = to_double(v); }},
        {"diagnose.rho", [](ExperimentConfig& c, const std::string& v) { c.diagnose_rho = to_double(v); }},
        {"diagnose.C", [](ExperimentConfig& c, const std::string& v) { c.diagnose_c = to_double(v); }},
        {"diagnose.eps_points", [](ExperimentConfig& c, const std::string& v) { c.diagnose_eps_points = to_int<int>(v); }},
        {"diagnose.delta", [](ExperimentConfig& c, const std::string& v) { c.diagnose_delta = to_double(v); }},
        {"diagnose.coverage_budget",
         [](ExperimentConfig& c, const std::string& v) { c.diagnose_coverage_budget = to_int<std::int64_t>(v); }},
        {"diagnose.coverage_reps", [](ExperimentConfig& c, const std::string& v) { c.diagnose_coverage_reps = to_int<int>(v); }},
        {"output.path", [](ExperimentConfig& c, const std::string& v) { c.output_path = v; }},
        {"output.format",
         [](ExperimentConfig& c, const std::string& v) {
             if (v == "csv") c.format = OutputFormat::csv;
             else if (v == "json") c.format = OutputFormat::json;
             else throw std::invalid_argument("expected csv or json");
         }},
        {"output.timing", [](ExperimentConfig& c, const std::string& v) { c.timing = to_bool(v); }},
    };
    return table;
}

bool contains(const std::vector<std::string>& ids, const std::string& id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

}  // namespace

const std::vector<std::string>& planner_ids() {
    static const std::vector<std::string> ids = {"platypoos", "sequool", "sequool_reset", "olop", "uniform_naive",
                                                 "uniform_good"};
    return ids;
}

const std::vector<std::string>& env_ids() {
    static const std::vector<std::string> ids = {"toy", "synthetic"};
    return ids;
}

void ExperimentConfig::validate() const {
    std::vector<std::string> planners = sweep_planners.empty() ? std::vector<std::string>{planner} : sweep_planners;
    for (const auto& p : planners) {
        if (!contains(planner_ids(), p)) {
            throw InvalidConfig("unknown planner '" + p + "'; valid ids: " + join(planner_ids()));
        }
        const bool has_btilde = btilde || !sweep_btilde.empty() || sweep_btilde_matches_b;
        if (p == "olop" && (!has_btilde || !rmaxtilde)) {
            throw InvalidConfig("OLOP requires btilde and rmaxtilde (planner.btilde, planner.rmaxtilde)");
        }
        if ((p == "uniform_naive" || p == "uniform_good") && horizon < 1) {
            throw InvalidConfig("uniform planners require planner.horizon >= 1");
        }
    }
    if (!contains(env_ids(), env)) throw InvalidConfig("unknown env '" + env + "'; valid ids: " + join(env_ids()));
    if (!(gamma >= 0.0 && gamma < 1.0)) throw InvalidConfig("env.gamma must lie in [0, 1)");
    if (!(b >= 0.0)) throw InvalidConfig("env.b must be >= 0");
    if (budget < 1) throw InvalidConfig("budget must be >= 1");
    if (replications < 1) throw InvalidConfig("replications must be >= 1");
    if (rollout_steps < 0) throw InvalidConfig("rollout.steps must be >= 0");
    if (sweep_mode != "run" && sweep_mode != "rollout") throw InvalidConfig("sweep.mode must be run or rollout");
    if (!(oracle_tol > 0.0)) throw InvalidConfig("oracle.tol must be > 0");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(text).substr(0, eq));
        const std::string value = trim(std::string_view(text).substr(eq + 1));
        const auto& table = setters();
        auto it = table.find(key);
        if (it == table.end()) {
            throw InvalidConfig("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        try {
            it->second(cfg, value);
        } catch (const std::exception& e) {
            throw InvalidConfig("line " + std::to_string(lineno) + ": bad value '" + value + "' for key '" + key +
                                "': " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig("cannot open config file '" + path + "'");
    return parse_config(in);
}

}  // namespace olplan::harness
