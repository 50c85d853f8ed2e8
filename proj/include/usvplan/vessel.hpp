#pragma once

#include "usvplan/geometry.hpp"

namespace usvplan {

/// Planar vessel state. Velocities are in the body frame: surge forward,
/// sway to port, yaw rate counterclockwise (positive turns to port).
struct VesselState {
    Point2 position;
    double heading = 0.0;   // rad, world frame, atan2 convention
    double surge = 0.0;     // m/s
    double sway = 0.0;      // m/s
    double yaw_rate = 0.0;  // rad/s
    double time = 0.0;      // s since mission start
};

/// One azimuth pod setting.
struct PodSetting {
    double rpm = 0.0;      // signed, negative is reverse
    double azimuth = 0.0;  // rad, 0 pushes the vessel forward
};

/// Command for the stern pod pair.
struct PodCommand {
    PodSetting port;
    PodSetting starboard;
};

/// Constant environmental disturbance. Current advects the hull in the
/// world frame; wind is a constant world-frame force on the hull.
struct Disturbance {
    double current_vx = 0.0;  // m/s
    double current_vy = 0.0;  // m/s
    double wind_fx = 0.0;     // N
    double wind_fy = 0.0;     // N
};

/// Physical parameters of the vessel and its propulsion.
struct VesselParams {
    double mass = 180.0;          // kg
    double yaw_inertia = 120.0;   // kg m^2
    double drag_surge = 225.0;    // N s/m
    double drag_sway = 400.0;     // N s/m
    double drag_yaw = 300.0;      // N m s/rad
    double thrust_coeff = 1e-4;   // N per rpm^2
    double pod_offset_x = -1.2;   // m, pods astern of the origin
    double pod_offset_y = 0.5;    // m, half spacing between the pods
    double rpm_max = 1500.0;
    double azimuth_max = 0.6;     // rad
    double max_surge = 2.5;       // m/s, commanded speed ceiling
    double max_yaw_rate = 0.7;    // rad/s, commanded rate ceiling
};

/// Quadratic thrust law: sign-preserving in rpm.
double thrust_from_rpm(double rpm, const VesselParams& params);

/// Advance the state by one fixed step of semi-implicit Euler.
VesselState step(const VesselState& state, const PodCommand& cmd,
                 const Disturbance& dist, const VesselParams& params, double dt);

}  // namespace usvplan
