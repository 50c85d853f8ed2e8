#include "usvplan/plan.hpp"

#include <cstdio>

#include <json.hpp>

#include "usvplan/errors.hpp"

namespace usvplan {

using nlohmann::json;

CapabilitySet CapabilitySet::defaults() {
    return {{
        {"move_to_docking_station",
         "navigate to the approach point of the named docking station"},
        {"record_data", "align with the station and record inspection data"},
    }};
}

bool CapabilitySet::contains(const std::string& name) const {
    for (const auto& cap : capabilities) {
        if (cap.name == name) return true;
    }
    return false;
}

std::string to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::MoveTo: return "move_to_docking_station";
        case ActionKind::RecordData: return "record_data";
    }
    throw Error("unknown ActionKind value");
}

std::string FeedbackReport::to_text() const {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "Attempt %d of action %s on %s failed with reason %s at location "
                  "(%.1f, %.1f).",
                  attempt, to_string(failed_action.kind).c_str(), failed_action.target.c_str(),
                  usvplan::to_string(reason).c_str(), location.x, location.y);
    return buf;
}

namespace {

ActionKind kind_from_name(const std::string& name, const CapabilitySet& capabilities) {
    if (!capabilities.contains(name)) {
        throw UnknownAction("unknown action: " + name);
    }
    if (name == "move_to_docking_station") return ActionKind::MoveTo;
    if (name == "record_data") return ActionKind::RecordData;
    throw UnknownAction("action has no executable mapping: " + name);
}

/// Substring [from, end) of the first balanced brace group starting at
/// `from`, honoring JSON string quoting. Returns npos if unbalanced.
std::size_t balanced_end(const std::string& text, std::size_t from) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = from; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (ch == '\\') {
                escaped = true;
            } else if (ch == '"') {
                in_string = false;
            }
            continue;
        }
        if (ch == '"') {
            in_string = true;
        } else if (ch == '{') {
            ++depth;
        } else if (ch == '}') {
            if (--depth == 0) return i + 1;
        }
    }
    return std::string::npos;
}

/// First substring of `raw` that parses as a JSON object.
json extract_first_object(const std::string& raw) {
    for (std::size_t at = raw.find('{'); at != std::string::npos; at = raw.find('{', at + 1)) {
        const std::size_t end = balanced_end(raw, at);
        if (end == std::string::npos) continue;
        const json parsed = json::parse(raw.substr(at, end - at), nullptr, false);
        if (!parsed.is_discarded() && parsed.is_object()) return parsed;
    }
    throw ParseError("response contains no JSON object");
}

}  // namespace

SymbolicPlan parse_plan(const std::string& raw, const WorldState& world,
                        const CapabilitySet& capabilities) {
    const json doc = extract_first_object(raw);
    if (!doc.contains("plan") || !doc["plan"].is_array()) {
        throw SchemaError("missing or non-array key: plan");
    }
    if (!doc.contains("reasoning") || !doc["reasoning"].is_string()) {
        throw SchemaError("missing or non-string key: reasoning");
    }

    SymbolicPlan plan;
    plan.reasoning = doc["reasoning"].get<std::string>();
    for (const auto& step : doc["plan"]) {
        if (!step.is_object() || !step.contains("action") || !step["action"].is_string() ||
            !step.contains("target") || !step["target"].is_string()) {
            throw SchemaError("plan step must be an object with string action and target");
        }
        plan.actions.push_back({kind_from_name(step["action"].get<std::string>(), capabilities),
                                step["target"].get<std::string>()});
    }
    validate_plan(plan, world, capabilities);
    return plan;
}

std::string serialize_plan(const SymbolicPlan& plan) {
    json steps = json::array();
    for (const auto& action : plan.actions) {
        steps.push_back({{"action", to_string(action.kind)}, {"target", action.target}});
    }
    return json{{"plan", steps}, {"reasoning", plan.reasoning}}.dump(2);
}

void validate_plan(const SymbolicPlan& plan, const WorldState& world,
                   const CapabilitySet& capabilities) {
    if (plan.actions.empty()) {
        throw InvariantError("plan is empty");
    }
    for (const auto& action : plan.actions) {
        if (!capabilities.contains(to_string(action.kind))) {
            throw UnknownAction("unknown action: " + to_string(action.kind));
        }
        world.find_station(action.target);  // throws UnknownTarget
    }
    for (std::size_t i = 0; i < plan.actions.size(); ++i) {
        if (i > 0 && plan.actions[i] == plan.actions[i - 1]) {
            throw InvariantError("consecutive identical actions on " + plan.actions[i].target);
        }
        if (plan.actions[i].kind == ActionKind::RecordData) {
            if (i == 0 || plan.actions[i - 1].kind != ActionKind::MoveTo ||
                plan.actions[i - 1].target != plan.actions[i].target) {
                throw InvariantError("record_data on " + plan.actions[i].target +
                                     " is not immediately preceded by its move");
            }
        }
    }
}

}  // namespace usvplan
