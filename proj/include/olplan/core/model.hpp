#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "olplan/core/action_seq.hpp"

namespace olplan {

using Rng = std::mt19937_64;

/// Opaque handle of an environment state. Each model defines its encoding.
using State = std::uint64_t;

/// Mixes a master seed with stream coordinates into an independent seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(Rng& rng);

enum class NoiseKind { none, uniform, rademacher, truncated_gaussian };

std::string_view to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view text);

/// Zero-mean additive reward noise supported on [-b, b].
class NoiseModel {
public:
    NoiseModel() = default;
    NoiseModel(NoiseKind kind, double range);

    [[nodiscard]] NoiseKind kind() const { return kind_; }
    [[nodiscard]] double range() const { return range_; }
    [[nodiscard]] bool is_none() const { return kind_ == NoiseKind::none || range_ == 0.0; }
    [[nodiscard]] NoiseModel scaled(double alpha) const;

    /// One noise draw. Consumes engine output only when the noise is active,
    /// and the number of engine calls does not depend on the range.
    double draw(Rng& rng) const;

private:
    NoiseKind kind_ = NoiseKind::none;
    double range_ = 0.0;
};

/// Environment contract: deterministic transitions and bounded stochastic
/// rewards with mean r(x, a). `mean_reward` is oracle access and is never
/// reachable from a planner, which only sees a Simulator.
class GenerativeModel {
public:
    virtual ~GenerativeModel() = default;

    [[nodiscard]] virtual int num_actions() const = 0;
    [[nodiscard]] virtual double gamma() const = 0;
    [[nodiscard]] virtual double r_max() const = 0;
    [[nodiscard]] virtual State initial_state() const = 0;
    [[nodiscard]] virtual State next_state(State x, Action a) const = 0;
    [[nodiscard]] virtual double mean_reward(State x, Action a) const = 0;
    [[nodiscard]] virtual const NoiseModel& noise() const = 0;
    /// Constant added to every mean reward, subtracted again when reporting returns.
    [[nodiscard]] virtual double reward_shift() const { return 0.0; }
    [[nodiscard]] virtual std::string describe_state(State x) const { return std::to_string(x); }

    double sample_reward(State x, Action a, Rng& rng) const {
        return mean_reward(x, a) + noise().draw(rng);
    }
};

/// Multiplies every mean reward, the noise range and R_max by `alpha`.
class ScaledModel final : public GenerativeModel {
public:
    ScaledModel(const GenerativeModel& base, double alpha);

    int num_actions() const override { return base_->num_actions(); }
    double gamma() const override { return base_->gamma(); }
    double r_max() const override { return alpha_ * base_->r_max(); }
    State initial_state() const override { return base_->initial_state(); }
    State next_state(State x, Action a) const override { return base_->next_state(x, a); }
    double mean_reward(State x, Action a) const override { return alpha_ * base_->mean_reward(x, a); }
    const NoiseModel& noise() const override { return noise_; }
    double reward_shift() const override { return alpha_ * base_->reward_shift(); }
    std::string describe_state(State x) const override { return base_->describe_state(x); }

private:
    const GenerativeModel* base_;
    double alpha_;
    NoiseModel noise_;
};

/// The planner's view of an environment: transitions and noisy reward
/// samples from one owned random stream, rooted at a chosen state.
class Simulator {
public:
    Simulator(const GenerativeModel& model, std::uint64_t seed);
    Simulator(const GenerativeModel& model, std::uint64_t seed, State root);

    [[nodiscard]] int num_actions() const { return model_->num_actions(); }
    [[nodiscard]] State root() const { return root_; }
    [[nodiscard]] bool deterministic_rewards() const { return model_->noise().is_none(); }
    [[nodiscard]] State step(State x, Action a) const;

    /// One reward sample. The running draw index identifies it in sample logs.
    double sample(State x, Action a);
    [[nodiscard]] std::uint64_t draws() const { return draws_; }

private:
    const GenerativeModel* model_;
    Rng rng_;
    State root_;
    std::uint64_t draws_ = 0;
};

}  // namespace olplan
