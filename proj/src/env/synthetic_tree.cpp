#include "olplan/env/synthetic_tree.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "olplan/core/errors.hpp"

namespace olplan::env {

namespace {

constexpr std::uint64_t kMaxTableNodes = 10'000'000;
// Stream index reserved for continuing the path past the table.
constexpr std::uint64_t kPathStream = 0x9a7b;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view to_string(SyntheticProfile p) {
    return p == SyntheticProfile::needle ? "needle" : "bushy";
}

SyntheticProfile parse_profile(std::string_view text) {
    if (text == "needle") return SyntheticProfile::needle;
    if (text == "bushy") return SyntheticProfile::bushy;
    throw InvalidArgument("unknown synthetic profile '" + std::string(text) + "' (valid: needle, bushy)");
}

SyntheticTree::SyntheticTree(const SyntheticTreeConfig& cfg) : cfg_(cfg) {
    const auto& c = cfg_;
    if (c.num_actions < 1) throw InfeasibleParameters("need at least one action");
    if (c.depth < 0) throw InfeasibleParameters("table depth must be >= 0");
    if (!(c.gamma >= 0.0 && c.gamma < 1.0)) throw InfeasibleParameters("gamma must lie in [0, 1)");
    if (!(c.rho > 0.0 && c.rho <= c.gamma)) throw InfeasibleParameters("rho must lie in (0, gamma]");
    if (!(c.r_max > 0.0)) throw InfeasibleParameters("R_max must be positive");
    if (!(c.nu > 0.0 && c.nu <= c.r_max / (1.0 - c.gamma) * (1.0 + 1e-12))) {
        throw InfeasibleParameters("nu must lie in (0, R_max/(1-gamma)]");
    }
    if (c.nu * (1.0 - c.rho) > c.r_max * (1.0 + 1e-12)) {
        throw InfeasibleParameters("on-path reward nu(1-rho) exceeds R_max");
    }
    if (!(c.gap >= 0.0 && c.gap <= 1.0)) {
        throw InfeasibleParameters("gap outside [0, 1] would force rewards outside [0, R_max]");
    }
    const auto k = static_cast<std::uint64_t>(c.num_actions);
    level_offset_.push_back(0);
    std::uint64_t width = 1;
    for (int d = 0; d <= c.depth; ++d) {
        level_offset_.push_back(level_offset_.back() + width);
        if (level_offset_.back() > kMaxTableNodes) {
            throw InfeasibleParameters("table would exceed 10^7 nodes");
        }
        width *= k;
    }
}

SyntheticTree SyntheticTree::build(const SyntheticTreeConfig& cfg) {
    SyntheticTree tree(cfg);
    const auto& c = tree.cfg_;
    const auto k = static_cast<std::uint64_t>(c.num_actions);
    Rng rng(derive_seed(c.seed, 1));

    tree.path_index_.assign(static_cast<std::size_t>(c.depth) + 1, 0);
    for (int t = 0; t < c.depth; ++t) {
        auto a = static_cast<Action>(rng() % k);
        tree.path_actions_.push_back(a);
        tree.path_index_[static_cast<std::size_t>(t) + 1] = tree.path_index_[static_cast<std::size_t>(t)] * k + a;
    }

    const std::uint64_t total = tree.level_offset_.back();
    tree.rewards_.assign(total, 0.0);
    for (int d = 1; d <= c.depth; ++d) {
        const double on_path = tree.path_reward(d - 1);
        const std::uint64_t first = tree.level_offset_[static_cast<std::size_t>(d)];
        const std::uint64_t last = tree.level_offset_[static_cast<std::size_t>(d) + 1];
        for (std::uint64_t id = first; id < last; ++id) {
            const std::uint64_t idx = id - first;
            if (idx == tree.path_index_[static_cast<std::size_t>(d)]) {
                tree.rewards_[id] = on_path;
            } else if (c.profile == SyntheticProfile::bushy) {
                tree.rewards_[id] = (1.0 - c.gap) * on_path * uniform01(rng);
            }
        }
    }
    return tree;
}

double SyntheticTree::path_reward(int t) const {
    return cfg_.nu * (1.0 - cfg_.rho) * std::pow(cfg_.rho / cfg_.gamma, t);
}

Action SyntheticTree::path_action(int t) const {
    if (t < cfg_.depth) return path_actions_[static_cast<std::size_t>(t)];
    return static_cast<Action>(derive_seed(cfg_.seed, kPathStream, static_cast<std::uint64_t>(t)) %
                               static_cast<std::uint64_t>(cfg_.num_actions));
}

ActionSeq SyntheticTree::designated_path(int length) const {
    std::vector<Action> actions;
    for (int t = 0; t < length; ++t) actions.push_back(path_action(t));
    return ActionSeq(std::move(actions));
}

int SyntheticTree::state_depth(State x) const {
    const std::uint64_t total = level_offset_.back();
    if (x < total) {
        auto it = std::upper_bound(level_offset_.begin(), level_offset_.end(), x);
        return static_cast<int>(it - level_offset_.begin()) - 1;
    }
    return cfg_.depth + 1 + static_cast<int>((x - total) / 2);
}

bool SyntheticTree::state_on_path(State x) const {
    const std::uint64_t total = level_offset_.back();
    if (x < total) {
        int d = state_depth(x);
        return x - level_offset_[static_cast<std::size_t>(d)] == path_index_[static_cast<std::size_t>(d)];
    }
    return ((x - total) & 1U) != 0;
}

State SyntheticTree::beyond_state(int depth, bool on_path) const {
    return level_offset_.back() + 2 * static_cast<std::uint64_t>(depth - cfg_.depth - 1) + (on_path ? 1 : 0);
}

State SyntheticTree::next_state(State x, Action a) const {
    if (a >= static_cast<Action>(cfg_.num_actions)) throw InvalidArgument("action index out of range");
    const int d = state_depth(x);
    if (d < cfg_.depth) {
        const std::uint64_t idx = x - level_offset_[static_cast<std::size_t>(d)];
        return level_offset_[static_cast<std::size_t>(d) + 1] + idx * static_cast<std::uint64_t>(cfg_.num_actions) + a;
    }
    return beyond_state(d + 1, state_on_path(x) && a == path_action(d));
}

double SyntheticTree::mean_reward(State x, Action a) const {
    if (a >= static_cast<Action>(cfg_.num_actions)) throw InvalidArgument("action index out of range");
    const int d = state_depth(x);
    if (d < cfg_.depth) return rewards_[next_state(x, a)];
    return state_on_path(x) && a == path_action(d) ? path_reward(d) : 0.0;
}

std::string SyntheticTree::describe_state(State x) const {
    return "depth " + std::to_string(state_depth(x)) + (state_on_path(x) ? " on-path" : " off-path");
}

double SyntheticTree::path_loss(const ActionSeq& seq) const {
    double loss = 0.0;
    double discount = 1.0;
    State x = initial_state();
    for (int t = 0; t < seq.depth(); ++t) {
        loss += discount * (path_reward(t) - mean_reward(x, seq[static_cast<std::size_t>(t)]));
        x = next_state(x, seq[static_cast<std::size_t>(t)]);
        discount *= cfg_.gamma;
    }
    return loss + cfg_.nu * std::pow(cfg_.rho, seq.depth());
}

void SyntheticTree::save(std::ostream& out) const {
    const auto& c = cfg_;
    out << "synthetic_tree 1\n"
        << "num_actions " << c.num_actions << '\n'
        << "depth " << c.depth << '\n'
        << "nu " << fmt17(c.nu) << '\n'
        << "rho " << fmt17(c.rho) << '\n'
        << "gamma " << fmt17(c.gamma) << '\n'
        << "r_max " << fmt17(c.r_max) << '\n'
        << "profile " << to_string(c.profile) << '\n'
        << "gap " << fmt17(c.gap) << '\n'
        << "seed " << c.seed << '\n'
        << "noise " << olplan::to_string(c.noise.kind()) << ' ' << fmt17(c.noise.range()) << '\n';
    const auto k = static_cast<std::uint64_t>(c.num_actions);
    for (int d = 1; d <= c.depth; ++d) {
        const std::uint64_t first = level_offset_[static_cast<std::size_t>(d)];
        const std::uint64_t last = level_offset_[static_cast<std::size_t>(d) + 1];
        for (std::uint64_t id = first; id < last; ++id) {
            std::vector<Action> digits(static_cast<std::size_t>(d));
            std::uint64_t idx = id - first;
            for (int t = d - 1; t >= 0; --t) {
                digits[static_cast<std::size_t>(t)] = static_cast<Action>(idx % k);
                idx /= k;
            }
            out << "node " << d << ' ' << ActionSeq(std::move(digits)).to_string() << ' ' << fmt17(rewards_[id])
                << '\n';
        }
    }
}

SyntheticTree SyntheticTree::load(std::istream& in) {
    std::string line;
    std::map<std::string, std::string> header;
    std::vector<std::pair<ActionSeq, double>> nodes;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "node") {
            int d = 0;
            std::string seq;
            std::string value;
            if (!(ls >> d >> seq >> value)) throw InvalidArgument("fixture line " + std::to_string(lineno) + ": malformed node");
            nodes.emplace_back(ActionSeq::parse(seq), std::stod(value));
            if (nodes.back().first.depth() != d) throw InvalidArgument("fixture line " + std::to_string(lineno) + ": depth mismatch");
        } else {
            std::string rest;
            std::getline(ls >> std::ws, rest);
            header[key] = rest;
        }
    }
    if (header["synthetic_tree"] != "1") throw InvalidArgument("not a synthetic tree fixture");
    SyntheticTreeConfig c;
    try {
        c.num_actions = std::stoi(header.at("num_actions"));
        c.depth = std::stoi(header.at("depth"));
        c.nu = std::stod(header.at("nu"));
        c.rho = std::stod(header.at("rho"));
        c.gamma = std::stod(header.at("gamma"));
        c.r_max = std::stod(header.at("r_max"));
        c.profile = parse_profile(header.at("profile"));
        c.gap = std::stod(header.at("gap"));
        c.seed = std::stoull(header.at("seed"));
        std::istringstream ns(header.at("noise"));
        std::string kind;
        double range = 0.0;
        ns >> kind >> range;
        c.noise = NoiseModel(parse_noise_kind(kind), range);
    } catch (const std::out_of_range&) {
        throw InvalidArgument("fixture header is incomplete");
    }
    // Rebuild the path from the seed, then overwrite the table with the file.
    SyntheticTree tree = build(c);
    if (nodes.size() + 1 != tree.rewards_.size()) throw InvalidArgument("fixture node count does not match its header");
    for (const auto& [seq, reward] : nodes) {
        State x = tree.initial_state();
        for (Action a : seq.actions()) x = tree.next_state(x, a);
        tree.rewards_[x] = reward;
    }
    return tree;
}

}  // namespace olplan::env
