#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "olplan/core/action_seq.hpp"
#include "olplan/core/planning_tree.hpp"

namespace olplan::planners {

/// One planner decision, for depth-of-opening diagnostics.
struct TraceEvent {
    enum class Kind { open, cross_validation, episode };
    Kind kind = Kind::open;
    int h = 0;   ///< stage depth (open), prefix position t (cross_validation), episode index (episode)
    int p = 0;   ///< sample level; -1 when the planner has none
    ActionSeq node;
    std::int64_t m = 0;  ///< evaluations spent by the event
    double u_hat = 0.0;  ///< û of the node when it was selected

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

std::string_view to_string(TraceEvent::Kind kind);

struct RunOptions {
    bool trace = false;
    SampleLog* sample_log = nullptr;
};

struct PlannerResult {
    std::string planner;
    Action first_action = 0;
    ActionSeq chosen_sequence;
    std::map<int, ActionSeq> candidates;  ///< per sample level p (PlaTγPOOS only)
    std::int64_t budget_limit = 0;
    std::int64_t budget_used = 0;
    std::int64_t evaluations = 0;  ///< individual reward samples drawn
    int max_opened_depth = 0;
    bool budget_exhausted = false;  ///< a scheduled step was skipped for lack of budget
    std::vector<TraceEvent> trace;
    std::shared_ptr<const PlanningTree> tree;  ///< final tree of the opening-based planners
};

/// Line-delimited JSON, one object per event.
void write_trace(std::ostream& out, const std::vector<TraceEvent>& trace);

}  // namespace olplan::planners
