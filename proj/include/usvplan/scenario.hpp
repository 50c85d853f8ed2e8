#pragma once

#include <string>

#include "usvplan/control.hpp"
#include "usvplan/executor.hpp"
#include "usvplan/plan.hpp"
#include "usvplan/planner.hpp"
#include "usvplan/vessel.hpp"
#include "usvplan/world.hpp"

namespace usvplan {

/// Everything a mission run needs, loaded from one scenario file.
struct Scenario {
    int format_version = 1;
    WorldState world;
    MissionSpec mission;
    VesselState initial_state;
    VesselParams vessel_params;
    ControlConfig control;
    ExecutorConfig executor;
    RemoteConfig remote;
};

/// Read and validate a scenario file. Throws ParseError on malformed
/// JSON and ValidationError on invariant violations (duplicate station
/// ids, stations outside bounds, standoff inside a footprint, missions
/// naming unknown stations, nonpositive dimensions).
Scenario load_scenario(const std::string& path);

Scenario scenario_from_json_text(const std::string& text, const std::string& origin);

}  // namespace usvplan
