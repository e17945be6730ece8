#pragma once

#include <cstdint>
#include <utility>

#include "olplan/core/model.hpp"

namespace olplan::env {

/// State (bin, d) of the two-state counter MDP: d counts consecutive repeats.
struct ToyState {
    int bin = 0;
    std::uint64_t d = 0;

    friend bool operator==(const ToyState&, const ToyState&) = default;
};

struct ToyMdpConfig {
    double gamma = 0.95;
    NoiseModel noise;
    double shift = 100.0;
    double r_max = 130.0;  ///< the counter is unbounded; planners that need R_max read this
};

/// Two binary states and two actions. Switching (bin != a) pays 2 and resets
/// the counter; staying pays d and increments it. Every reward carries `shift`.
class ToyMdp final : public GenerativeModel {
public:
    explicit ToyMdp(ToyMdpConfig cfg = {});

    static State encode(ToyState s) { return s.d * 2 + static_cast<State>(s.bin); }
    static ToyState decode(State x) { return {static_cast<int>(x & 1U), x >> 1U}; }

    /// Deterministic successor and one noisy reward sample.
    std::pair<ToyState, double> step(ToyState s, Action a, Rng& rng) const;

    int num_actions() const override { return 2; }
    double gamma() const override { return cfg_.gamma; }
    double r_max() const override { return cfg_.r_max; }
    State initial_state() const override { return encode({0, 0}); }
    State next_state(State x, Action a) const override;
    double mean_reward(State x, Action a) const override;
    const NoiseModel& noise() const override { return cfg_.noise; }
    double reward_shift() const override { return cfg_.shift; }
    std::string describe_state(State x) const override;

    [[nodiscard]] const ToyMdpConfig& config() const { return cfg_; }

private:
    ToyMdpConfig cfg_;
};

}  // namespace olplan::env
