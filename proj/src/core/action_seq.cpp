#include "olplan/core/action_seq.hpp"

#include <charconv>

#include "olplan/core/errors.hpp"

namespace olplan {

ActionSeq ActionSeq::prefix(int h) const {
    if (h < 0 || h > depth()) throw InvalidArgument("prefix length out of range");
    return ActionSeq(std::vector<Action>(actions_.begin(), actions_.begin() + h));
}

ActionSeq ActionSeq::child(Action a) const {
    ActionSeq out = *this;
    out.actions_.push_back(a);
    return out;
}

ActionSeq ActionSeq::parent() const {
    if (is_root()) throw InvalidArgument("the root has no parent");
    return prefix(depth() - 1);
}

bool ActionSeq::valid_for(int num_actions) const {
    for (Action a : actions_) {
        if (a >= static_cast<Action>(num_actions)) return false;
    }
    return true;
}

std::string ActionSeq::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < actions_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(actions_[i]);
    }
    return out;
}

ActionSeq ActionSeq::parse(std::string_view text) {
    std::vector<Action> actions;
    while (!text.empty()) {
        auto dot = text.find('.');
        auto token = text.substr(0, dot);
        Action a = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), a);
        if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
            throw InvalidArgument("malformed action sequence: '" + std::string(text) + "'");
        }
        actions.push_back(a);
        if (dot == std::string_view::npos) break;
        text.remove_prefix(dot + 1);
        if (text.empty()) throw InvalidArgument("trailing '.' in action sequence");
    }
    return ActionSeq(std::move(actions));
}

}  // namespace olplan
