#include "usvplan/executor.hpp"

#include <algorithm>
#include <cmath>

#include "usvplan/errors.hpp"
#include "usvplan/path_planner.hpp"

namespace usvplan {

namespace {

/// Drive along a planned path until the goal is captured or the monitor
/// aborts. Appends every simulated state to the trajectory.
ExecuteResult follow_path(const Path& path, const VesselState& start, const WorldState& world,
                          const VesselParams& params, const ControlConfig& control,
                          const ExecutorConfig& config, std::vector<VesselState>& trajectory) {
    VesselState state = start;
    ControlState cs;
    MonitorState ms;
    std::size_t next_waypoint = path.waypoints.size() > 1 ? 1 : 0;
    const double action_start = start.time;

    while (true) {
        const double elapsed = state.time - action_start;
        const MonitorVerdict verdict = monitor(state, path, next_waypoint, elapsed, control, ms);
        if (verdict == MonitorVerdict::GoalReached) {
            return {true, std::nullopt, state, path.waypoints};
        }
        if (verdict == MonitorVerdict::WaypointReached) {
            if (next_waypoint + 1 < path.waypoints.size()) ++next_waypoint;
            continue;
        }
        if (verdict == MonitorVerdict::Timeout) {
            return {false, FailureReason::Timeout, state, path.waypoints};
        }
        if (verdict == MonitorVerdict::ControlDeviation) {
            return {false, FailureReason::ControlDeviation, state, path.waypoints};
        }
        if (state.time >= config.max_sim_time) {
            return {false, FailureReason::Timeout, state, path.waypoints};
        }
        const Twist twist = compute_twist(state, path, next_waypoint, control, cs, config.dt);
        const PodCommand cmd = allocate_thrust(twist, state, params, control, cs, config.dt);
        state = step(state, cmd, world.disturbance, params, config.dt);
        trajectory.push_back(state);
    }
}

/// Rotate in place until the heading error to the station's approach
/// heading is inside the alignment tolerance.
ExecuteResult align_heading(double target_heading, const VesselState& start,
                            const WorldState& world, const VesselParams& params,
                            const ControlConfig& control, const ExecutorConfig& config,
                            std::vector<VesselState>& trajectory) {
    VesselState state = start;
    ControlState cs;
    const double action_start = start.time;

    while (true) {
        if (std::abs(wrap_angle(target_heading - state.heading)) <= config.align_tolerance) {
            return {true, std::nullopt, state, {}};
        }
        if (state.time - action_start > control.min_time_budget ||
            state.time >= config.max_sim_time) {
            return {false, FailureReason::Timeout, state, {}};
        }
        const double error = wrap_angle(target_heading - state.heading);
        Twist twist;
        twist.yaw_rate_cmd = pid_step(error, config.dt, control.heading_gains, cs.heading_pid);
        twist.surge_cmd = 0.0;
        const PodCommand cmd = allocate_thrust(twist, state, params, control, cs, config.dt);
        state = step(state, cmd, world.disturbance, params, config.dt);
        trajectory.push_back(state);
    }
}

std::vector<std::string> station_order_for(const MissionSpec& mission, const WorldState& world) {
    if (mission.structured && std::holds_alternative<VisitOrdered>(*mission.structured)) {
        return std::get<VisitOrdered>(*mission.structured).station_ids;
    }
    std::vector<std::string> ids;
    for (const auto& st : world.stations) ids.push_back(st.id);
    return ids;
}

void erase_station(std::vector<std::string>& ids, const std::string& id) {
    ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
}

}  // namespace

ExecuteResult execute_action(const Action& action, const VesselState& start,
                             const WorldState& world, const VesselParams& params,
                             const ControlConfig& control, const ExecutorConfig& config,
                             std::vector<VesselState>& trajectory) {
    const DockingStation& station = world.find_station(action.target);
    const ApproachPose approach = approach_point(station, config.standoff);
    if (action.kind == ActionKind::MoveTo) {
        Path path;
        try {
            path = plan_path(start.position, approach.position, world, control.grid_resolution,
                             control.clearance);
        } catch (const NoPathFound&) {
            return {false, FailureReason::PathBlocked, start, {}};
        }
        return follow_path(path, start, world, params, control, config, trajectory);
    }
    return align_heading(approach.heading, start, world, params, control, config, trajectory);
}

bool completion_check(const std::set<std::string>& required,
                      const std::vector<DataRecord>& records,
                      const std::vector<std::string>& unreachable) {
    for (const auto& id : required) {
        const bool recorded = std::any_of(records.begin(), records.end(),
                                          [&](const DataRecord& r) { return r.station_id == id; });
        const bool excluded =
            std::find(unreachable.begin(), unreachable.end(), id) != unreachable.end();
        if (!recorded && !excluded) return false;
    }
    return true;
}

MissionReport run_mission(PlanBackend& backend, const WorldState& world,
                          const MissionSpec& mission, const VesselState& initial,
                          const VesselParams& params, const ControlConfig& control,
                          const ExecutorConfig& config) {
    MissionReport report;
    report.backend_name = backend.name();
    VesselState state = initial;
    state.time = 0.0;
    report.trajectory.push_back(state);

    PlanContext ctx;
    ctx.world = &world;
    ctx.params = &params;
    ctx.capabilities = CapabilitySet::defaults();
    ctx.mission = mission;
    ctx.current_location = state.position;
    ctx.remaining_stations = station_order_for(mission, world);

    std::map<std::string, int> attempts;
    std::set<std::string> required;
    bool required_known = false;
    if (mission.structured) {
        for (const auto& id : ctx.remaining_stations) required.insert(id);
        required_known = true;
    }

    int fresh_episodes = 0;
    bool out_of_time = false;

    SymbolicPlan plan;
    try {
        plan = generate_plan(backend, ctx);
    } catch (const Error&) {
        report.final_status = "Mission Incomplete";
        return report;
    }
    report.plans.push_back(plan);

    // Without a structured mission the plan itself defines what must be
    // recorded; with one, the mission does.
    if (!required_known) {
        for (const auto& action : plan.actions) {
            if (action.kind == ActionKind::RecordData) required.insert(action.target);
        }
        std::vector<std::string> rest;
        for (const auto& action : plan.actions) {
            if (action.kind == ActionKind::RecordData) rest.push_back(action.target);
        }
        ctx.remaining_stations = rest;
        required_known = true;
    }

    while (true) {
        bool replanned = false;
        for (std::size_t i = 0; i < plan.actions.size(); ++i) {
            const Action& action = plan.actions[i];
            // Skip visits that already succeeded or were written off.
            const bool still_pending =
                std::find(ctx.remaining_stations.begin(), ctx.remaining_stations.end(),
                          action.target) != ctx.remaining_stations.end();
            if (!still_pending) continue;

            ActionOutcome outcome;
            outcome.action = action;
            outcome.start_time = state.time;
            outcome.plan_episode = static_cast<int>(report.plans.size()) - 1;
            if (action.kind == ActionKind::MoveTo) {
                const ApproachPose approach =
                    approach_point(world.find_station(action.target), config.standoff);
                report.planned_waypoints.push_back(
                    {action.target, approach.position, outcome.plan_episode});
            }

            const ExecuteResult result = execute_action(action, state, world, params, control,
                                                        config, report.trajectory);
            state = result.final_state;
            outcome.end_time = state.time;
            outcome.end_location = state.position;
            outcome.status = result.success ? OutcomeStatus::Succeeded : OutcomeStatus::Failed;
            outcome.reason = result.reason;
            outcome.path_waypoints = result.path_waypoints;
            report.outcomes.push_back(outcome);

            if (result.success) {
                if (action.kind == ActionKind::RecordData) {
                    const DockingStation& st = world.find_station(action.target);
                    DataRecord record;
                    record.station_id = action.target;
                    record.timestamp = state.time;
                    record.position = state.position;
                    record.heading = state.heading;
                    record.alignment_error =
                        std::abs(wrap_angle(state.heading - st.approach_heading));
                    report.records.push_back(record);
                    erase_station(ctx.remaining_stations, action.target);
                }
                if (state.time >= config.max_sim_time) {
                    out_of_time = true;
                    break;
                }
                continue;
            }

            // Failure: report it, then either replan or write the
            // station off once its budget is spent.
            const int attempt = ++attempts[action.target];
            FeedbackReport feedback;
            feedback.failed_action = action;
            feedback.reason = *result.reason;
            feedback.location = state.position;
            feedback.attempt = attempt;
            report.feedbacks.push_back(feedback);

            if (state.time >= config.max_sim_time) {
                out_of_time = true;
                break;
            }

            ctx.current_location = state.position;
            if (attempt > config.max_replans) {
                report.unreachable_stations.push_back(action.target);
                erase_station(ctx.remaining_stations, action.target);
                if (ctx.remaining_stations.empty()) break;
                ctx.feedback.reset();
                try {
                    plan = generate_plan(backend, ctx);
                } catch (const Error&) {
                    break;
                }
            } else {
                ctx.feedback = feedback;
                try {
                    plan = replan_with_feedback(backend, ctx, config.max_replans);
                } catch (const Error&) {
                    break;
                }
                ctx.feedback.reset();
            }
            report.plans.push_back(plan);
            replanned = true;
            break;
        }

        if (out_of_time) break;
        if (replanned) continue;
        if (completion_check(required, report.records, report.unreachable_stations)) break;
        // A finished plan left required stations unvisited: recalculate
        // and retry, within a bounded number of fresh episodes.
        if (ctx.remaining_stations.empty() || ++fresh_episodes > config.max_replans) break;
        ctx.current_location = state.position;
        ctx.feedback.reset();
        try {
            plan = generate_plan(backend, ctx);
        } catch (const Error&) {
            break;
        }
        report.plans.push_back(plan);
    }

    bool all_recorded = true;
    for (const auto& id : required) {
        if (!std::any_of(report.records.begin(), report.records.end(),
                         [&](const DataRecord& r) { return r.station_id == id; })) {
            all_recorded = false;
            break;
        }
    }
    report.final_status = all_recorded ? "Mission Completed" : "Mission Incomplete";
    return report;
}

}  // namespace usvplan
