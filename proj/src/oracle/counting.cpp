#include "olplan/oracle/counting.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "olplan/core/errors.hpp"

namespace olplan::oracle {

std::string_view to_string(ValueKind kind) { return kind == ValueKind::u ? "u" : "v"; }

CountProfile::CountProfile(ValueKind kind, double v_star, std::vector<std::vector<double>> values_by_depth)
    : kind_(kind), v_star_(v_star), slack_(1e-12 * std::max(1.0, std::abs(v_star))),
      sorted_(std::move(values_by_depth)) {
    for (auto& level : sorted_) std::sort(level.begin(), level.end());
}

std::int64_t CountProfile::count(int h, double eps) const {
    if (h < 0 || h > depth()) throw InvalidArgument("depth outside the count profile");
    const auto& level = sorted_[static_cast<std::size_t>(h)];
    const double threshold = v_star_ - eps - slack_;
    return level.end() - std::lower_bound(level.begin(), level.end(), threshold);
}

std::vector<std::int64_t> CountProfile::near_optimal_counts(double nu, double rho) const {
    std::vector<std::int64_t> out;
    for (int h = 0; h <= depth(); ++h) out.push_back(count(h, 3.0 * nu * std::pow(rho, h)));
    return out;
}

CountProfile count_near_optimal(const OracleTable& oracle, ValueKind kind) {
    return {kind, oracle.v_star, kind == ValueKind::u ? oracle.u : oracle.v};
}

SandwichReport check_sandwich(const CountProfile& profile_u, const CountProfile& profile_v, double gamma, double r_max,
                        std::span<const double> eps_grid) {
    if (profile_u.depth() != profile_v.depth()) throw InvalidArgument("profiles of different depth");
    SandwichReport rep;
    for (int h = 0; h <= profile_u.depth(); ++h) {
        const double tail = std::pow(gamma, h) * r_max / (1.0 - gamma);
        for (double eps : eps_grid) {
            const std::int64_t nv = profile_v.count(h, eps);
            const std::int64_t nu_wide = profile_u.count(h, eps + tail);
            const std::int64_t nu = profile_u.count(h, eps);
            const std::int64_t nv_wide = profile_v.count(h, eps + tail);
            rep.checks += 2;
            if (!rep.first_violation && nv > nu_wide) rep.first_violation = SandwichViolation{h, eps, ValueKind::v, nv, nu_wide};
            if (!rep.first_violation && nu > nv_wide) rep.first_violation = SandwichViolation{h, eps, ValueKind::u, nu, nv_wide};
        }
    }
    return rep;
}

double fit_kappa(std::span<const std::int64_t> counts, double c) {
    if (!(c > 1.0)) throw InvalidArgument("fit_kappa needs C > 1");
    if (counts.size() < 2) throw InvalidArgument("fit_kappa needs counts for at least two depths");
    double kappa = 1.0;
    for (std::size_t h = 1; h < counts.size(); ++h) {
        kappa = std::max(kappa, std::pow(static_cast<double>(counts[h]) / c, 1.0 / static_cast<double>(h)));
    }
    return kappa;
}

void write_count_profiles(std::ostream& out, const CountProfile& profile_u, const CountProfile& profile_v,
                          std::span<const double> eps_grid) {
    nlohmann::json doc;
    doc["v_star"] = profile_u.v_star();
    doc["eps"] = std::vector<double>(eps_grid.begin(), eps_grid.end());
    for (const CountProfile* p : {&profile_u, &profile_v}) {
        nlohmann::json rows = nlohmann::json::array();
        for (int h = 0; h <= p->depth(); ++h) {
            std::vector<std::int64_t> row;
            for (double eps : eps_grid) row.push_back(p->count(h, eps));
            rows.push_back(row);
        }
        doc[std::string("N_") + std::string(to_string(p->kind()))] = rows;
    }
    out << doc.dump(1) << '\n';
}

}  // namespace olplan::oracle
