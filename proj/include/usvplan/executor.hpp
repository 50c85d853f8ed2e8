#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "usvplan/control.hpp"
#include "usvplan/plan.hpp"
#include "usvplan/planner.hpp"
#include "usvplan/vessel.hpp"
#include "usvplan/world.hpp"

namespace usvplan {

enum class OutcomeStatus {
    Succeeded,
    Failed,
};

/// What happened to one plan step.
struct ActionOutcome {
    Action action;
    OutcomeStatus status = OutcomeStatus::Succeeded;
    std::optional<FailureReason> reason;
    double start_time = 0.0;
    double end_time = 0.0;
    Point2 end_location;
    int plan_episode = 0;
    std::vector<Point2> path_waypoints;  // planned route, empty for record steps
};

/// One completed data capture at a station.
struct DataRecord {
    std::string station_id;
    double timestamp = 0.0;
    Point2 position;
    double heading = 0.0;
    double alignment_error = 0.0;  // rad, |heading - approach heading|
};

/// Approach point the planner committed to, tagged by station and episode.
struct PlannedWaypoint {
    std::string station_id;
    Point2 position;
    int plan_episode = 0;
};

/// Complete, deterministic record of one mission run.
struct MissionReport {
    std::vector<SymbolicPlan> plans;
    std::vector<ActionOutcome> outcomes;
    std::vector<DataRecord> records;
    std::vector<FeedbackReport> feedbacks;
    std::vector<VesselState> trajectory;
    std::vector<PlannedWaypoint> planned_waypoints;
    std::vector<std::string> unreachable_stations;
    std::string final_status;  // "Mission Completed" or "Mission Incomplete"
    std::string backend_name;
};

struct ExecutorConfig {
    double dt = 0.1;              // s
    double max_sim_time = 1200.0; // s, hard stop for the whole mission
    int max_replans = 3;          // attempts per station before giving up
    double align_tolerance = 0.05; // rad, heading error allowed when recording
    double standoff = 10.0;       // m, approach distance from station center
};

/// Result of driving the vessel through one action.
struct ExecuteResult {
    bool success = false;
    std::optional<FailureReason> reason;
    VesselState final_state;
    std::vector<Point2> path_waypoints;  // route planned for a move, if any
};

/// Drive one action to completion or failure, appending to the trajectory.
ExecuteResult execute_action(const Action& action, const VesselState& start,
                             const WorldState& world, const VesselParams& params,
                             const ControlConfig& control, const ExecutorConfig& config,
                             std::vector<VesselState>& trajectory);

/// True when every required station either has a data record or has been
/// declared unreachable with an exhausted replan budget. An unreachable
/// station still forces final_status "Mission Incomplete".
bool completion_check(const std::set<std::string>& required,
                      const std::vector<DataRecord>& records,
                      const std::vector<std::string>& unreachable);

/// Run the full plan/execute/replan loop until the mission completes,
/// every remaining station is exhausted, or sim time runs out.
MissionReport run_mission(PlanBackend& backend, const WorldState& world,
                          const MissionSpec& mission, const VesselState& initial,
                          const VesselParams& params, const ControlConfig& control,
                          const ExecutorConfig& config);

}  // namespace usvplan
