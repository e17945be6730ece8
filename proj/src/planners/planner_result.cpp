#include "olplan/planners/planner_result.hpp"

#include <ostream>

#include <json.hpp>

namespace olplan::planners {

std::string_view to_string(TraceEvent::Kind kind) {
    switch (kind) {
        case TraceEvent::Kind::open: return "open";
        case TraceEvent::Kind::cross_validation: return "cross_validation";
        case TraceEvent::Kind::episode: return "episode";
    }
    return "open";
}

void write_trace(std::ostream& out, const std::vector<TraceEvent>& trace) {
    for (const auto& e : trace) {
        nlohmann::json j = {{"event", to_string(e.kind)}, {"h", e.h},          {"p", e.p},
                            {"node", e.node.to_string()}, {"m", e.m}, {"u_hat", e.u_hat}};
        out << j.dump() << '\n';
    }
}

}  // namespace olplan::planners
