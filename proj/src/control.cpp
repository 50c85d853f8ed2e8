#include "usvplan/control.hpp"

#include <algorithm>
#include <cmath>

namespace usvplan {

double pid_step(double error, double dt, const PidGains& gains, PidState& state) {
    state.integral += error * dt;
    if (gains.integral_limit > 0.0) {
        state.integral = std::clamp(state.integral, -gains.integral_limit, gains.integral_limit);
    }
    const double derivative = (error - state.prev_error) / dt;
    state.prev_error = error;
    double out = gains.kp * error + gains.ki * state.integral + gains.kd * derivative;
    if (gains.output_limit > 0.0) {
        out = std::clamp(out, -gains.output_limit, gains.output_limit);
    }
    return out;
}

double cross_track_error(const Point2& position, const Point2& wp_prev, const Point2& wp_next) {
    const double course = std::atan2(wp_next.y - wp_prev.y, wp_next.x - wp_prev.x);
    const Point2 rel = position - wp_prev;
    // Left normal of the course direction.
    return -std::sin(course) * rel.x + std::cos(course) * rel.y;
}

double los_heading(const Point2& position, const Point2& wp_prev, const Point2& wp_next,
                   double lookahead) {
    const double course = std::atan2(wp_next.y - wp_prev.y, wp_next.x - wp_prev.x);
    const double e = cross_track_error(position, wp_prev, wp_next);
    return wrap_angle(course + std::atan2(-e, lookahead));
}

Twist compute_twist(const VesselState& state, const Path& path, std::size_t next_waypoint,
                    const ControlConfig& config, ControlState& cs, double dt) {
    const Point2& wp_next = path.waypoints[next_waypoint];
    const Point2 wp_prev =
        next_waypoint == 0 ? state.position : path.waypoints[next_waypoint - 1];
    const double desired = wp_prev == wp_next
                               ? state.heading
                               : los_heading(state.position, wp_prev, wp_next, config.lookahead);
    const double heading_error = wrap_angle(desired - state.heading);

    Twist tw;
    tw.yaw_rate_cmd = pid_step(heading_error, dt, config.heading_gains, cs.heading_pid);
    // Slow down while pointing the wrong way; never command reverse.
    tw.surge_cmd = config.cruise_speed * std::max(0.0, std::cos(heading_error));
    return tw;
}

PodCommand allocate_thrust(const Twist& twist, const VesselState& state,
                           const VesselParams& params, const ControlConfig& config,
                           ControlState& cs, double dt) {
    // Common-mode thrust tracks the surge command through the speed PID.
    const double total_thrust =
        pid_step(twist.surge_cmd - state.surge, dt, config.speed_gains, cs.speed_pid);
    // Differential thrust produces the torque whose drag-balanced yaw
    // rate equals the command; positive yaw turns to port, so the
    // starboard pod pushes harder.
    const double differential =
        params.drag_yaw * twist.yaw_rate_cmd / (2.0 * params.pod_offset_y);
    const double thrust_port = total_thrust / 2.0 - differential;
    const double thrust_stbd = total_thrust / 2.0 + differential;

    auto rpm_for = [&params](double thrust) {
        const double rpm = std::copysign(std::sqrt(std::abs(thrust) / params.thrust_coeff), thrust);
        return std::clamp(rpm, -params.rpm_max, params.rpm_max);
    };
    PodCommand cmd;
    cmd.port = {rpm_for(thrust_port), 0.0};
    cmd.starboard = {rpm_for(thrust_stbd), 0.0};
    return cmd;
}

double time_budget(double path_length, const ControlConfig& config) {
    return std::max(config.min_time_budget,
                    config.timeout_factor * path_length / config.cruise_speed);
}

MonitorVerdict monitor(const VesselState& state, const Path& path, std::size_t next_waypoint,
                       double elapsed, const ControlConfig& config, MonitorState& ms) {
    const Point2& goal = path.waypoints.back();
    if (distance(state.position, goal) <= config.capture_radius) {
        return MonitorVerdict::GoalReached;
    }
    if (next_waypoint + 1 < path.waypoints.size() &&
        distance(state.position, path.waypoints[next_waypoint]) <= config.capture_radius) {
        return MonitorVerdict::WaypointReached;
    }
    if (elapsed > time_budget(path.total_length, config)) {
        return MonitorVerdict::Timeout;
    }
    if (next_waypoint > 0 && next_waypoint < path.waypoints.size()) {
        const double e = std::abs(cross_track_error(state.position,
                                                    path.waypoints[next_waypoint - 1],
                                                    path.waypoints[next_waypoint]));
        if (e > config.deviation_limit) {
            if (!ms.deviation_start) ms.deviation_start = elapsed;
            if (elapsed - *ms.deviation_start > config.deviation_window) {
                return MonitorVerdict::ControlDeviation;
            }
        } else {
            ms.deviation_start.reset();
        }
    }
    return MonitorVerdict::InProgress;
}

}  // namespace usvplan
