#include "usvplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "usvplan/errors.hpp"

namespace usvplan {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ValidationError(path + "." + key + ": missing required field");
    }
    return obj[key];
}

double number_at(const json& v, const std::string& path) {
    if (!v.is_number()) throw ValidationError(path + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ValidationError(path + ": value must be finite");
    return d;
}

double number_or(const json& obj, const char* key, double fallback, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) return fallback;
    return number_at(obj[key], path + "." + key);
}

Point2 point_at(const json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) {
        throw ValidationError(path + ": expected [x, y]");
    }
    return {number_at(v[0], path + "[0]"), number_at(v[1], path + "[1]")};
}

/// Separating-axis overlap test for two convex quadrilaterals.
bool quads_overlap(const std::array<Point2, 4>& a, const std::array<Point2, 4>& b) {
    const std::array<Point2, 4>* quads[2] = {&a, &b};
    for (const auto* quad : quads) {
        for (int i = 0; i < 4; ++i) {
            const Point2 edge = (*quad)[(i + 1) % 4] - (*quad)[i];
            const Point2 axis{-edge.y, edge.x};
            double min_a = 1e300, max_a = -1e300, min_b = 1e300, max_b = -1e300;
            for (const auto& p : a) {
                const double proj = dot(axis, p);
                min_a = std::min(min_a, proj);
                max_a = std::max(max_a, proj);
            }
            for (const auto& p : b) {
                const double proj = dot(axis, p);
                min_b = std::min(min_b, proj);
                max_b = std::max(max_b, proj);
            }
            if (max_a < min_b || max_b < min_a) return false;
        }
    }
    return true;
}

WorldState parse_world(const json& w) {
    WorldState world;
    const json& bounds = require(w, "bounds", "world");
    world.bounds.min = point_at(require(bounds, "min", "world.bounds"), "world.bounds.min");
    world.bounds.max = point_at(require(bounds, "max", "world.bounds"), "world.bounds.max");
    if (world.bounds.max.x <= world.bounds.min.x || world.bounds.max.y <= world.bounds.min.y) {
        throw ValidationError("world.bounds: max must exceed min on both axes");
    }

    std::set<std::string> ids;
    const json& stations = require(w, "stations", "world");
    if (!stations.is_array() || stations.empty()) {
        throw ValidationError("world.stations: expected a non-empty array");
    }
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const std::string path = "world.stations[" + std::to_string(i) + "]";
        const json& s = stations[i];
        DockingStation st;
        const json& id = require(s, "id", path);
        if (!id.is_string() || id.get<std::string>().empty()) {
            throw ValidationError(path + ".id: expected a non-empty string");
        }
        st.id = id.get<std::string>();
        if (!ids.insert(st.id).second) {
            throw ValidationError(path + ".id: duplicate station id '" + st.id + "'");
        }
        st.position = point_at(require(s, "position", path), path + ".position");
        st.z = number_or(s, "z", 0.0, path);
        st.length = number_at(require(s, "length", path), path + ".length");
        st.width = number_at(require(s, "width", path), path + ".width");
        st.height = number_at(require(s, "height", path), path + ".height");
        if (st.length <= 0 || st.width <= 0 || st.height <= 0) {
            throw ValidationError(path + ": length, width, and height must be positive");
        }
        st.approach_heading =
            wrap_angle(number_at(require(s, "approach_heading", path), path + ".approach_heading"));
        for (const auto& corner : st.footprint()) {
            if (!world.bounds.contains(corner)) {
                throw ValidationError(path + ": station footprint extends outside world.bounds");
            }
        }
        world.stations.push_back(st);
    }
    for (std::size_t i = 0; i < world.stations.size(); ++i) {
        for (std::size_t j = i + 1; j < world.stations.size(); ++j) {
            if (quads_overlap(world.stations[i].footprint(), world.stations[j].footprint())) {
                throw ValidationError("world.stations: footprints of '" + world.stations[i].id +
                                      "' and '" + world.stations[j].id + "' overlap");
            }
        }
    }

    if (w.contains("obstacles")) {
        const json& obstacles = w["obstacles"];
        if (!obstacles.is_array()) throw ValidationError("world.obstacles: expected an array");
        for (std::size_t i = 0; i < obstacles.size(); ++i) {
            const std::string path = "world.obstacles[" + std::to_string(i) + "]";
            const json& o = obstacles[i];
            const json& type = require(o, "type", path);
            if (type == "circle") {
                CircleObstacle circle;
                circle.center = point_at(require(o, "center", path), path + ".center");
                circle.radius = number_at(require(o, "radius", path), path + ".radius");
                if (circle.radius <= 0) {
                    throw ValidationError(path + ".radius: must be positive");
                }
                const Point2 r{circle.radius, circle.radius};
                if (!world.bounds.contains(circle.center - r) ||
                    !world.bounds.contains(circle.center + r)) {
                    throw ValidationError(path + ": circle extends outside world.bounds");
                }
                world.obstacles.emplace_back(circle);
            } else if (type == "polygon") {
                PolygonObstacle poly;
                const json& verts = require(o, "vertices", path);
                if (!verts.is_array() || verts.size() < 3) {
                    throw ValidationError(path + ".vertices: expected at least 3 vertices");
                }
                for (std::size_t k = 0; k < verts.size(); ++k) {
                    const Point2 p =
                        point_at(verts[k], path + ".vertices[" + std::to_string(k) + "]");
                    if (!world.bounds.contains(p)) {
                        throw ValidationError(path + ": polygon extends outside world.bounds");
                    }
                    poly.vertices.push_back(p);
                }
                double twice_area = 0.0;
                for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
                    const Point2& p = poly.vertices[k];
                    const Point2& q = poly.vertices[(k + 1) % poly.vertices.size()];
                    twice_area += cross(p, q);
                }
                if (std::abs(twice_area) < 1e-9) {
                    throw ValidationError(path + ".vertices: polygon is degenerate");
                }
                if (twice_area < 0) {
                    std::reverse(poly.vertices.begin(), poly.vertices.end());
                }
                world.obstacles.emplace_back(poly);
            } else {
                throw ValidationError(path + ".type: expected 'circle' or 'polygon'");
            }
        }
    }

    if (w.contains("disturbance")) {
        const json& d = w["disturbance"];
        if (d.contains("current")) {
            const Point2 cur = point_at(d["current"], "world.disturbance.current");
            world.disturbance.current_vx = cur.x;
            world.disturbance.current_vy = cur.y;
        }
        if (d.contains("wind_force")) {
            const Point2 wind = point_at(d["wind_force"], "world.disturbance.wind_force");
            world.disturbance.wind_fx = wind.x;
            world.disturbance.wind_fy = wind.y;
        }
    }
    return world;
}

MissionSpec parse_mission(const json& m, const WorldState& world) {
    MissionSpec mission;
    const json& text = require(m, "text", "mission");
    if (!text.is_string()) throw ValidationError("mission.text: expected a string");
    mission.raw_text = text.get<std::string>();
    if (m.contains("structured") && !m["structured"].is_null()) {
        const json& s = m["structured"];
        if (s.is_string() && s == "visit_all") {
            mission.structured = VisitAll{};
        } else if (s.is_object() && s.contains("ordered")) {
            VisitOrdered ordered;
            if (!s["ordered"].is_array() || s["ordered"].empty()) {
                throw ValidationError("mission.structured.ordered: expected a non-empty array");
            }
            std::set<std::string> seen;
            for (const auto& id : s["ordered"]) {
                if (!id.is_string()) {
                    throw ValidationError("mission.structured.ordered: expected station id strings");
                }
                const std::string sid = id.get<std::string>();
                try {
                    world.find_station(sid);
                } catch (const UnknownTarget&) {
                    throw ValidationError("mission.structured.ordered: unknown station '" + sid +
                                          "'");
                }
                if (!seen.insert(sid).second) {
                    throw ValidationError("mission.structured.ordered: duplicate station '" + sid +
                                          "'");
                }
                ordered.station_ids.push_back(sid);
            }
            mission.structured = ordered;
        } else {
            throw ValidationError(
                "mission.structured: expected \"visit_all\" or {\"ordered\": [...]}");
        }
    }
    return mission;
}

VesselParams parse_vessel(const json& root) {
    VesselParams p;
    if (!root.contains("vessel")) return p;
    const json& v = root["vessel"];
    p.mass = number_or(v, "mass", p.mass, "vessel");
    p.yaw_inertia = number_or(v, "yaw_inertia", p.yaw_inertia, "vessel");
    if (v.contains("drag")) {
        const json& d = v["drag"];
        p.drag_surge = number_or(d, "surge", p.drag_surge, "vessel.drag");
        p.drag_sway = number_or(d, "sway", p.drag_sway, "vessel.drag");
        p.drag_yaw = number_or(d, "yaw", p.drag_yaw, "vessel.drag");
    }
    p.thrust_coeff = number_or(v, "thrust_coeff", p.thrust_coeff, "vessel");
    if (v.contains("pod_offset")) {
        const json& o = v["pod_offset"];
        p.pod_offset_x = number_or(o, "x", p.pod_offset_x, "vessel.pod_offset");
        p.pod_offset_y = number_or(o, "y", p.pod_offset_y, "vessel.pod_offset");
    }
    if (v.contains("limits")) {
        const json& l = v["limits"];
        p.rpm_max = number_or(l, "rpm_max", p.rpm_max, "vessel.limits");
        p.azimuth_max = number_or(l, "azimuth_max", p.azimuth_max, "vessel.limits");
        p.max_surge = number_or(l, "max_surge", p.max_surge, "vessel.limits");
        p.max_yaw_rate = number_or(l, "max_yaw_rate", p.max_yaw_rate, "vessel.limits");
    }
    if (p.mass <= 0 || p.yaw_inertia <= 0 || p.drag_surge <= 0 || p.drag_sway <= 0 ||
        p.drag_yaw <= 0 || p.thrust_coeff <= 0 || p.rpm_max <= 0 || p.azimuth_max <= 0 ||
        p.max_surge <= 0 || p.max_yaw_rate <= 0) {
        throw ValidationError("vessel: physical parameters and limits must be positive");
    }
    if (p.pod_offset_y <= 0) {
        throw ValidationError("vessel.pod_offset.y: half spacing must be positive");
    }
    return p;
}

PidGains parse_gains(const json& g, PidGains fallback, const std::string& path) {
    PidGains out = fallback;
    out.kp = number_or(g, "kp", out.kp, path);
    out.ki = number_or(g, "ki", out.ki, path);
    out.kd = number_or(g, "kd", out.kd, path);
    out.integral_limit = number_or(g, "integral_limit", out.integral_limit, path);
    out.output_limit = number_or(g, "output_limit", out.output_limit, path);
    if (out.kp < 0 || out.ki < 0 || out.kd < 0) {
        throw ValidationError(path + ": gains must be non-negative");
    }
    return out;
}

ControlConfig parse_control(const json& root) {
    ControlConfig c;
    if (!root.contains("control")) return c;
    const json& ctl = root["control"];
    c.grid_resolution = number_or(ctl, "grid_resolution", c.grid_resolution, "control");
    c.clearance = number_or(ctl, "clearance", c.clearance, "control");
    c.lookahead = number_or(ctl, "lookahead", c.lookahead, "control");
    c.cruise_speed = number_or(ctl, "cruise_speed", c.cruise_speed, "control");
    c.capture_radius = number_or(ctl, "capture_radius", c.capture_radius, "control");
    c.deviation_limit = number_or(ctl, "deviation_limit", c.deviation_limit, "control");
    c.deviation_window = number_or(ctl, "deviation_window", c.deviation_window, "control");
    c.timeout_factor = number_or(ctl, "timeout_factor", c.timeout_factor, "control");
    c.min_time_budget = number_or(ctl, "min_time_budget", c.min_time_budget, "control");
    if (ctl.contains("heading_pid")) {
        c.heading_gains = parse_gains(ctl["heading_pid"], c.heading_gains, "control.heading_pid");
    }
    if (ctl.contains("speed_pid")) {
        c.speed_gains = parse_gains(ctl["speed_pid"], c.speed_gains, "control.speed_pid");
    }
    if (c.grid_resolution <= 0 || c.clearance < 0 || c.lookahead <= 0 || c.cruise_speed <= 0 ||
        c.capture_radius <= 0 || c.deviation_limit <= 0 || c.deviation_window <= 0 ||
        c.timeout_factor <= 0 || c.min_time_budget <= 0) {
        throw ValidationError("control: parameters must be positive (clearance may be zero)");
    }
    return c;
}

ExecutorConfig parse_executor(const json& root) {
    ExecutorConfig e;
    if (!root.contains("executor")) return e;
    const json& x = root["executor"];
    e.dt = number_or(x, "dt", e.dt, "executor");
    e.max_sim_time = number_or(x, "max_sim_time", e.max_sim_time, "executor");
    if (x.contains("max_replans")) {
        if (!x["max_replans"].is_number_integer() || x["max_replans"].get<int>() < 0) {
            throw ValidationError("executor.max_replans: expected a non-negative integer");
        }
        e.max_replans = x["max_replans"].get<int>();
    }
    e.align_tolerance = number_or(x, "align_tolerance", e.align_tolerance, "executor");
    e.standoff = number_or(x, "standoff", e.standoff, "executor");
    if (e.dt <= 0 || e.dt > 0.5) {
        throw ValidationError("executor.dt: must be in (0, 0.5] seconds");
    }
    if (e.max_sim_time <= 0 || e.align_tolerance <= 0 || e.standoff <= 0) {
        throw ValidationError("executor: times, tolerance, and standoff must be positive");
    }
    return e;
}

RemoteConfig parse_remote(const json& root) {
    RemoteConfig r;
    if (!root.contains("backend") || !root["backend"].contains("remote")) return r;
    const json& b = root["backend"]["remote"];
    if (b.contains("base_url")) {
        if (!b["base_url"].is_string()) {
            throw ValidationError("backend.remote.base_url: expected a string");
        }
        r.base_url = b["base_url"].get<std::string>();
    }
    if (b.contains("model")) {
        if (!b["model"].is_string()) {
            throw ValidationError("backend.remote.model: expected a string");
        }
        r.model = b["model"].get<std::string>();
    }
    r.timeout_s = number_or(b, "timeout_s", r.timeout_s, "backend.remote");
    if (b.contains("api_key_env")) {
        if (!b["api_key_env"].is_string()) {
            throw ValidationError("backend.remote.api_key_env: expected a string");
        }
        r.api_key_env = b["api_key_env"].get<std::string>();
    }
    if (r.timeout_s <= 0) throw ValidationError("backend.remote.timeout_s: must be positive");
    return r;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text, const std::string& origin) {
    const json root = json::parse(text, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        throw ParseError(origin + ": not a well-formed JSON document");
    }

    Scenario sc;
    const json& version = require(root, "format_version", origin);
    if (!version.is_number_integer() || version.get<int>() != 1) {
        throw ValidationError(origin + ".format_version: expected the integer 1");
    }
    sc.format_version = 1;

    sc.world = parse_world(require(root, "world", origin));
    sc.mission = parse_mission(require(root, "mission", origin), sc.world);
    sc.vessel_params = parse_vessel(root);
    sc.control = parse_control(root);
    sc.executor = parse_executor(root);
    sc.remote = parse_remote(root);

    const json& init = require(root, "initial_state", origin);
    sc.initial_state.position =
        point_at(require(init, "position", "initial_state"), "initial_state.position");
    sc.initial_state.heading = wrap_angle(number_or(init, "heading", 0.0, "initial_state"));
    sc.initial_state.surge = number_or(init, "surge", 0.0, "initial_state");
    sc.initial_state.sway = number_or(init, "sway", 0.0, "initial_state");
    sc.initial_state.yaw_rate = number_or(init, "yaw_rate", 0.0, "initial_state");
    sc.initial_state.time = 0.0;
    if (!sc.world.bounds.contains(sc.initial_state.position)) {
        throw ValidationError("initial_state.position: outside world.bounds");
    }

    // Docking geometry must be coherent: the standoff point exists
    // outside every station it belongs to.
    for (const auto& st : sc.world.stations) {
        if (sc.executor.standoff <= std::max(st.length, st.width) / 2.0) {
            throw ValidationError("executor.standoff: must exceed half of station '" + st.id +
                                  "' footprint extent");
        }
        const ApproachPose approach = approach_point(st, sc.executor.standoff);
        if (!sc.world.bounds.contains(approach.position)) {
            throw ValidationError("world.stations: approach point of '" + st.id +
                                  "' falls outside world.bounds");
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open scenario file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_json_text(buffer.str(), path);
}

}  // namespace usvplan
