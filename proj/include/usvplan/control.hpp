#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "usvplan/geometry.hpp"
#include "usvplan/path_planner.hpp"
#include "usvplan/vessel.hpp"

namespace usvplan {

struct PidGains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
    double integral_limit = 0.0;  // absolute clamp; nonpositive disables
    double output_limit = 0.0;    // absolute clamp; nonpositive disables
};

struct PidState {
    double integral = 0.0;
    double prev_error = 0.0;
};

/// One PID update. Integrates first, clamps the integral, differentiates
/// against the previous error, clamps the output, stores the error.
double pid_step(double error, double dt, const PidGains& gains, PidState& state);

/// Velocity command handed to the thrust allocator.
struct Twist {
    double surge_cmd = 0.0;     // m/s
    double yaw_rate_cmd = 0.0;  // rad/s
};

/// Tuning and monitoring parameters for the navigation stack.
struct ControlConfig {
    double grid_resolution = 1.0;   // m
    double clearance = 2.0;         // m
    double lookahead = 3.0;         // m, cross-track lookahead
    double cruise_speed = 1.5;      // m/s
    double capture_radius = 2.0;    // m, waypoint acceptance
    double deviation_limit = 10.0;  // m, cross-track abort threshold
    double deviation_window = 5.0;  // s, sustain time before abort
    double timeout_factor = 3.0;    // budget = factor * length / cruise
    double min_time_budget = 20.0;  // s
    PidGains heading_gains{1.2, 0.05, 0.3, 0.5, 0.7};
    PidGains speed_gains{400.0, 150.0, 0.0, 2.0, 450.0};
};

struct ControlState {
    PidState heading_pid;
    PidState speed_pid;
};

/// Desired heading for line-of-sight tracking of the segment from
/// wp_prev to wp_next: segment course steered by atan2(-cross_track,
/// lookahead). Result in [-pi, pi).
double los_heading(const Point2& position, const Point2& wp_prev, const Point2& wp_next,
                   double lookahead);

/// Cross-track error relative to the segment course, positive to the
/// left of the course direction.
double cross_track_error(const Point2& position, const Point2& wp_prev, const Point2& wp_next);

/// Guidance + heading PID for the active path segment (waypoints
/// [next_waypoint - 1, next_waypoint]). Surge command is the cruise
/// speed scaled by max(0, cos(heading error)); heading error is wrapped.
Twist compute_twist(const VesselState& state, const Path& path, std::size_t next_waypoint,
                    const ControlConfig& config, ControlState& cs, double dt);

/// Map a twist to pod settings: common-mode thrust from the speed PID on
/// the surge error, differential thrust from the yaw-rate command,
/// azimuths held at zero, rpm clamped to the pod limit.
PodCommand allocate_thrust(const Twist& twist, const VesselState& state,
                           const VesselParams& params, const ControlConfig& config,
                           ControlState& cs, double dt);

enum class MonitorVerdict {
    InProgress,
    WaypointReached,
    GoalReached,
    Timeout,
    ControlDeviation,
};

struct MonitorState {
    std::optional<double> deviation_start;  // elapsed time the excursion began
};

/// Progress check for the active segment. Precedence: goal, waypoint,
/// timeout, sustained cross-track deviation, in progress. The time
/// budget is max(min_time_budget, timeout_factor * length / cruise).
MonitorVerdict monitor(const VesselState& state, const Path& path, std::size_t next_waypoint,
                       double elapsed, const ControlConfig& config, MonitorState& ms);

/// Transit time budget for a path of the given length.
double time_budget(double path_length, const ControlConfig& config);

}  // namespace usvplan
