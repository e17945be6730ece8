#include "olplan/env/toy_mdp.hpp"

#include "olplan/core/errors.hpp"

namespace olplan::env {

ToyMdp::ToyMdp(ToyMdpConfig cfg) : cfg_(cfg) {
    if (!(cfg_.gamma >= 0.0 && cfg_.gamma < 1.0)) throw InvalidArgument("gamma must lie in [0, 1)");
    if (!(cfg_.r_max >= 0.0)) throw InvalidArgument("R_max must be >= 0");
}

State ToyMdp::next_state(State x, Action a) const {
    if (a > 1) throw InvalidArgument("toy MDP has actions {0, 1}");
    ToyState s = decode(x);
    if (static_cast<Action>(s.bin) != a) return encode({static_cast<int>(a), 0});
    return encode({s.bin, s.d + 1});
}

double ToyMdp::mean_reward(State x, Action a) const {
    if (a > 1) throw InvalidArgument("toy MDP has actions {0, 1}");
    ToyState s = decode(x);
    double base = static_cast<Action>(s.bin) != a ? 2.0 : static_cast<double>(s.d);
    return base + cfg_.shift;
}

std::pair<ToyState, double> ToyMdp::step(ToyState s, Action a, Rng& rng) const {
    State x = encode(s);
    double r = sample_reward(x, a, rng);
    return {decode(next_state(x, a)), r};
}

std::string ToyMdp::describe_state(State x) const {
    ToyState s = decode(x);
    return "(" + std::to_string(s.bin) + "," + std::to_string(s.d) + ")";
}

}  // namespace olplan::env
