#pragma once

#include <cstdint>

#include "olplan/core/model.hpp"

namespace olplan::oracle {

enum class RadiusForm {
    p_max,       ///< b √(p_max ln(4n/δ) / 2^{p+1})
    p_max_plus,  ///< same with p_max + 1, non-degenerate when p_max = 0
};

double xi_radius(double b, int p_max, std::int64_t n, double delta, int p, RadiusForm form = RadiusForm::p_max);

struct CoverageResult {
    int replications = 0;
    int violating_replications = 0;
    std::int64_t checked_pairs = 0;  ///< (sequence, p) pairs tested over all replications
    [[nodiscard]] double rate() const {
        return replications == 0 ? 0.0 : static_cast<double>(violating_replications) / replications;
    }
};

/// Runs PlaTγPOOS `replications` times from the model's initial state, each
/// with its own stream derived from `seed`, and counts the runs in which some
/// eligible (a, p), i.e. T_{a_[t]} >= e(t,p) for t in [2, h(a)], has
/// |û(a) - u(a)| above the radius. Replications run on `jobs` threads; the
/// result does not depend on `jobs`.
CoverageResult concentration_coverage(const GenerativeModel& model, std::int64_t n, double delta, int replications,
                                      std::uint64_t seed, RadiusForm form = RadiusForm::p_max, int jobs = 1);

}  // namespace olplan::oracle
