#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "olplan/oracle/brute_force.hpp"

namespace olplan::oracle {

enum class ValueKind { u, v };

std::string_view to_string(ValueKind kind);

/// Values of every node per depth, sorted so that N_h(ε), the number of
/// depth-h nodes with value >= v* - ε, can be read for any ε.
class CountProfile {
public:
    CountProfile(ValueKind kind, double v_star, std::vector<std::vector<double>> values_by_depth);

    [[nodiscard]] ValueKind kind() const { return kind_; }
    [[nodiscard]] double v_star() const { return v_star_; }
    [[nodiscard]] int depth() const { return static_cast<int>(sorted_.size()) - 1; }
    /// Thresholds carry a relative slack of 1e-12 so that exact ties count.
    [[nodiscard]] std::int64_t count(int h, double eps) const;
    /// N_h(3νρ^h) for h = 0..depth.
    [[nodiscard]] std::vector<std::int64_t> near_optimal_counts(double nu, double rho) const;

private:
    ValueKind kind_;
    double v_star_;
    double slack_;
    std::vector<std::vector<double>> sorted_;  ///< ascending
};

/// Profile of u- or v-values over the whole oracle table.
CountProfile count_near_optimal(const OracleTable& oracle, ValueKind kind);

struct SandwichViolation {
    int h = 0;
    double eps = 0.0;
    ValueKind lhs_kind = ValueKind::v;  ///< the side that came out larger
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

struct SandwichReport {
    std::int64_t checks = 0;
    std::optional<SandwichViolation> first_violation;
    [[nodiscard]] bool pass() const { return !first_violation; }
};

/// For every depth h and grid ε, with tail_h = γ^h R_max / (1-γ):
///   N^v_h(ε) <= N^u_h(ε + tail_h)   and   N^u_h(ε) <= N^v_h(ε + tail_h).
SandwichReport check_sandwich(const CountProfile& profile_u, const CountProfile& profile_v, double gamma, double r_max,
                        std::span<const double> eps_grid);

/// max over h >= 1 of (N_h / C)^{1/h}, clipped below at 1: the smallest κ with
/// N_h <= C κ^h up to the profile depth. Throws InvalidArgument when C <= 1 or
/// fewer than two depths are given.
double fit_kappa(std::span<const std::int64_t> counts, double c);

/// Writes per-depth N^u and N^v at every grid ε as JSON.
void write_count_profiles(std::ostream& out, const CountProfile& profile_u, const CountProfile& profile_v,
                          std::span<const double> eps_grid);

}  // namespace olplan::oracle
