#include "olplan/core/model.hpp"

#include <cmath>

#include "olplan/core/errors.hpp"

namespace olplan {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string_view to_string(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::none: return "none";
        case NoiseKind::uniform: return "uniform";
        case NoiseKind::rademacher: return "rademacher";
        case NoiseKind::truncated_gaussian: return "truncated_gaussian";
    }
    return "none";
}

NoiseKind parse_noise_kind(std::string_view text) {
    if (text == "none") return NoiseKind::none;
    if (text == "uniform") return NoiseKind::uniform;
    if (text == "rademacher") return NoiseKind::rademacher;
    if (text == "truncated_gaussian") return NoiseKind::truncated_gaussian;
    throw InvalidArgument("unknown noise kind '" + std::string(text) +
                          "' (valid: none, uniform, rademacher, truncated_gaussian)");
}

NoiseModel::NoiseModel(NoiseKind kind, double range) : kind_(kind), range_(range) {
    if (!(range >= 0.0) || !std::isfinite(range)) throw InvalidArgument("noise range must be finite and >= 0");
    if (kind == NoiseKind::none && range != 0.0) throw InvalidArgument("noise kind 'none' requires range 0");
}

NoiseModel NoiseModel::scaled(double alpha) const {
    NoiseModel out = *this;
    out.range_ = range_ * alpha;
    return out;
}

double NoiseModel::draw(Rng& rng) const {
    if (range_ == 0.0) return 0.0;
    switch (kind_) {
        case NoiseKind::none:
            return 0.0;
        case NoiseKind::uniform:
            return range_ * (2.0 * uniform01(rng) - 1.0);
        case NoiseKind::rademacher:
            return (rng() >> 63) ? range_ : -range_;
        case NoiseKind::truncated_gaussian: {
            // N(0, 1/4) conditioned on [-1, 1]; symmetric, hence zero mean.
            for (;;) {
                double u1 = uniform01(rng);
                double u2 = uniform01(rng);
                double z = 0.5 * std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * M_PI * u2);
                if (std::abs(z) <= 1.0) return range_ * z;
            }
        }
    }
    return 0.0;
}

ScaledModel::ScaledModel(const GenerativeModel& base, double alpha)
    : base_(&base), alpha_(alpha), noise_(base.noise().scaled(alpha)) {
    if (!(alpha > 0.0)) throw InvalidArgument("scale factor must be positive");
}

Simulator::Simulator(const GenerativeModel& model, std::uint64_t seed)
    : Simulator(model, seed, model.initial_state()) {}

Simulator::Simulator(const GenerativeModel& model, std::uint64_t seed, State root)
    : model_(&model), rng_(seed), root_(root) {}

State Simulator::step(State x, Action a) const {
    if (a >= static_cast<Action>(model_->num_actions())) throw InvalidArgument("action index out of range");
    return model_->next_state(x, a);
}

double Simulator::sample(State x, Action a) {
    if (a >= static_cast<Action>(model_->num_actions())) throw InvalidArgument("action index out of range");
    ++draws_;
    return model_->sample_reward(x, a, rng_);
}

}  // namespace olplan
