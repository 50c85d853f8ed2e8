#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "usvplan/failure_reason.hpp"
#include "usvplan/geometry.hpp"
#include "usvplan/world.hpp"

namespace usvplan {

/// One action the vessel can be asked to perform.
struct Capability {
    std::string name;
    std::string description;
};

/// The action vocabulary advertised to the planner. Plans naming actions
/// outside this set are rejected.
struct CapabilitySet {
    std::vector<Capability> capabilities;

    static CapabilitySet defaults();
    bool contains(const std::string& name) const;
};

enum class ActionKind {
    MoveTo,
    RecordData,
};

std::string to_string(ActionKind kind);

/// One symbolic plan step: an action applied to a station.
struct Action {
    ActionKind kind = ActionKind::MoveTo;
    std::string target;

    bool operator==(const Action& o) const { return kind == o.kind && target == o.target; }
};

/// Ordered action list plus the planner's stated rationale.
struct SymbolicPlan {
    std::vector<Action> actions;
    std::string reasoning;
};

/// Visit every station, order left to the planner.
struct VisitAll {};

/// Visit exactly these stations in this order.
struct VisitOrdered {
    std::vector<std::string> station_ids;
};

/// Mission as loaded from the scenario: the operator's text plus an
/// optional structured reading of it.
struct MissionSpec {
    std::string raw_text;
    std::optional<std::variant<VisitAll, VisitOrdered>> structured;
};

/// What went wrong with one action attempt, phrased for the planner.
struct FeedbackReport {
    Action failed_action;
    FailureReason reason = FailureReason::PathBlocked;
    Point2 location;
    int attempt = 1;

    std::string to_text() const;
};

/// Extract the first parseable JSON object from raw backend text, check
/// the {"plan": [{"action", "target"}...], "reasoning"} schema, map
/// action names through the capability set, and enforce every plan
/// invariant. Violations are rejections, never repairs. Throws
/// ParseError, SchemaError, UnknownAction, UnknownTarget, or
/// InvariantError.
SymbolicPlan parse_plan(const std::string& raw, const WorldState& world,
                        const CapabilitySet& capabilities);

std::string serialize_plan(const SymbolicPlan& plan);

/// Reject plans that are empty, name unknown actions or stations, record
/// data anywhere but immediately after moving to the same station, or
/// repeat an action back to back. Throws on the first violation.
void validate_plan(const SymbolicPlan& plan, const WorldState& world,
                   const CapabilitySet& capabilities);

}  // namespace usvplan
