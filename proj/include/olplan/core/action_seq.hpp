#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace olplan {

using Action = std::uint32_t;

/// A finite sequence of actions, identified with a node of the planning tree.
/// The empty sequence is the root. Ordering is lexicographic, a strict prefix
/// ranking before its extensions.
class ActionSeq {
public:
    ActionSeq() = default;
    ActionSeq(std::initializer_list<Action> actions) : actions_(actions) {}
    explicit ActionSeq(std::vector<Action> actions) : actions_(std::move(actions)) {}

    [[nodiscard]] int depth() const { return static_cast<int>(actions_.size()); }
    [[nodiscard]] bool is_root() const { return actions_.empty(); }
    [[nodiscard]] Action operator[](std::size_t i) const { return actions_[i]; }
    [[nodiscard]] Action front() const { return actions_.front(); }
    [[nodiscard]] Action back() const { return actions_.back(); }
    [[nodiscard]] std::span<const Action> actions() const { return actions_; }

    /// First `h` actions, a_[h].
    [[nodiscard]] ActionSeq prefix(int h) const;
    [[nodiscard]] ActionSeq child(Action a) const;
    [[nodiscard]] ActionSeq parent() const;

    /// True when every action index is below `num_actions`.
    [[nodiscard]] bool valid_for(int num_actions) const;

    /// Dotted form, "0.1.1"; the root is the empty string.
    [[nodiscard]] std::string to_string() const;
    static ActionSeq parse(std::string_view text);

    friend bool operator==(const ActionSeq&, const ActionSeq&) = default;
    friend std::strong_ordering operator<=>(const ActionSeq& a, const ActionSeq& b) {
        return a.actions_ <=> b.actions_;
    }

private:
    std::vector<Action> actions_;
};

}  // namespace olplan
