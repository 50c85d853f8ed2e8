#include "usvplan/vessel.hpp"

#include <algorithm>
#include <cmath>

namespace usvplan {

double thrust_from_rpm(double rpm, const VesselParams& params) {
    return params.thrust_coeff * rpm * std::abs(rpm);
}

namespace {

double clamp_abs(double v, double limit) {
    return std::clamp(v, -limit, limit);
}

}  // namespace

VesselState step(const VesselState& state, const PodCommand& cmd,
                 const Disturbance& dist, const VesselParams& params, double dt) {
    const double thrust_port = thrust_from_rpm(clamp_abs(cmd.port.rpm, params.rpm_max), params);
    const double thrust_stbd =
        thrust_from_rpm(clamp_abs(cmd.starboard.rpm, params.rpm_max), params);
    const double az_port = clamp_abs(cmd.port.azimuth, params.azimuth_max);
    const double az_stbd = clamp_abs(cmd.starboard.azimuth, params.azimuth_max);

    // Pod positions in the body frame: port to +y, starboard to -y.
    const double fx_port = thrust_port * std::cos(az_port);
    const double fy_port = thrust_port * std::sin(az_port);
    const double fx_stbd = thrust_stbd * std::cos(az_stbd);
    const double fy_stbd = thrust_stbd * std::sin(az_stbd);
    const double torque = params.pod_offset_x * (fy_port + fy_stbd) -
                          params.pod_offset_y * fx_port + params.pod_offset_y * fx_stbd;

    // Wind acts at the hull origin, rotated from world into body frame.
    const double c = std::cos(state.heading);
    const double s = std::sin(state.heading);
    const double wind_bx = c * dist.wind_fx + s * dist.wind_fy;
    const double wind_by = -s * dist.wind_fx + c * dist.wind_fy;

    const double du = (fx_port + fx_stbd + wind_bx - params.drag_surge * state.surge) / params.mass;
    const double dv = (fy_port + fy_stbd + wind_by - params.drag_sway * state.sway) / params.mass;
    const double dr = (torque - params.drag_yaw * state.yaw_rate) / params.yaw_inertia;

    VesselState next = state;
    next.surge = clamp_abs(state.surge + du * dt, params.max_surge);
    next.sway = state.sway + dv * dt;
    next.yaw_rate = clamp_abs(state.yaw_rate + dr * dt, params.max_yaw_rate);
    // Wrap only when needed so an unturned heading stays bit-identical.
    const double h = state.heading + next.yaw_rate * dt;
    next.heading = (h >= -M_PI && h < M_PI) ? h : wrap_angle(h);

    // Kinematics use the freshly integrated velocities and heading;
    // current advects the hull in the world frame.
    const double cn = std::cos(next.heading);
    const double sn = std::sin(next.heading);
    next.position.x =
        state.position.x + (cn * next.surge - sn * next.sway + dist.current_vx) * dt;
    next.position.y =
        state.position.y + (sn * next.surge + cn * next.sway + dist.current_vy) * dt;
    next.time = state.time + dt;
    return next;
}

}  // namespace usvplan
