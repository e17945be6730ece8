#include "olplan/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace olplan::harness {

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols = {
        "planner", "env",    "seed",           "n",           "gamma",     "noise_kind",   "b",     "btilde",
        "rmaxtilde", "regret", "shifted_return", "budget_used", "max_depth", "wallclock_ms", "error"};
    return cols;
}

std::string format_number(double x) {
    if (std::isnan(x)) return {};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

std::string opt(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const RunRecord& r : records) {
        out << r.planner << ',' << r.env << ',' << r.seed << ',' << r.n << ',' << format_number(r.gamma) << ','
            << to_string(r.noise_kind) << ',' << format_number(r.b) << ',' << opt(r.btilde) << ',' << opt(r.rmaxtilde)
            << ',' << opt(r.regret) << ',' << opt(r.shifted_return) << ',' << r.budget_used << ',' << r.max_depth
            << ',' << format_number(r.wallclock_ms) << ',' << csv_escape(r.error) << '\n';
    }
}

nlohmann::json to_json(const RunRecord& r) {
    auto num = [](const std::optional<double>& x) -> nlohmann::json {
        if (!x || std::isnan(*x)) return nullptr;
        return *x;
    };
    nlohmann::json j = {{"planner", r.planner},
                        {"env", r.env},
                        {"seed", r.seed},
                        {"n", r.n},
                        {"gamma", r.gamma},
                        {"noise_kind", std::string(to_string(r.noise_kind))},
                        {"b", r.b},
                        {"btilde", num(r.btilde)},
                        {"rmaxtilde", num(r.rmaxtilde)},
                        {"first_action", r.first_action ? nlohmann::json(*r.first_action) : nlohmann::json(nullptr)},
                        {"chosen_sequence", r.chosen_sequence},
                        {"regret", num(r.regret)},
                        {"shifted_return", num(r.shifted_return)},
                        {"budget_used", r.budget_used},
                        {"max_depth", r.max_depth},
                        {"wallclock_ms", r.wallclock_ms},
                        {"error", r.error}};
    if (!r.actions.empty()) j["actions"] = r.actions;
    return j;
}

void write_json(std::ostream& out, const std::vector<RunRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    out << arr.dump(1) << '\n';
}

}  // namespace olplan::harness
