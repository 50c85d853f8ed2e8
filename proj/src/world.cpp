#include "usvplan/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "usvplan/errors.hpp"

namespace usvplan {

std::array<Point2, 4> DockingStation::footprint() const {
    const double c = std::cos(approach_heading);
    const double s = std::sin(approach_heading);
    const double hl = length / 2.0;
    const double hw = width / 2.0;
    // Local corners (along, across), counterclockwise.
    const Point2 local[4] = {{hl, hw}, {-hl, hw}, {-hl, -hw}, {hl, -hw}};
    std::array<Point2, 4> out;
    for (int i = 0; i < 4; ++i) {
        out[i] = {position.x + c * local[i].x - s * local[i].y,
                  position.y + s * local[i].x + c * local[i].y};
    }
    return out;
}

const DockingStation& WorldState::find_station(const std::string& id) const {
    for (const auto& st : stations) {
        if (st.id == id) return st;
    }
    throw UnknownTarget("unknown station: " + id);
}

namespace {

double circle_sdf(const Point2& p, const CircleObstacle& c) {
    return distance(p, c.center) - c.radius;
}

bool point_in_polygon(const Point2& p, const std::vector<Point2>& verts) {
    bool inside = false;
    for (std::size_t i = 0, j = verts.size() - 1; i < verts.size(); j = i++) {
        const Point2& a = verts[i];
        const Point2& b = verts[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

double polygon_sdf(const Point2& p, const std::vector<Point2>& verts) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0, j = verts.size() - 1; i < verts.size(); j = i++) {
        d = std::min(d, point_segment_distance(p, verts[j], verts[i]));
    }
    return point_in_polygon(p, verts) ? -d : d;
}

/// Signed distance to an oriented box: negative inside.
double station_sdf(const Point2& p, const DockingStation& st) {
    const double c = std::cos(st.approach_heading);
    const double s = std::sin(st.approach_heading);
    const double rx = p.x - st.position.x;
    const double ry = p.y - st.position.y;
    const double lx = c * rx + s * ry;   // along approach axis
    const double ly = -s * rx + c * ry;  // across
    const double dx = std::abs(lx) - st.length / 2.0;
    const double dy = std::abs(ly) - st.width / 2.0;
    const double outside = std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
    const double inside = std::min(std::max(dx, dy), 0.0);
    return outside + inside;
}

}  // namespace

double signed_clearance(const Point2& p, const WorldState& world) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& obs : world.obstacles) {
        if (const auto* circle = std::get_if<CircleObstacle>(&obs)) {
            d = std::min(d, circle_sdf(p, *circle));
        } else {
            d = std::min(d, polygon_sdf(p, std::get<PolygonObstacle>(obs).vertices));
        }
    }
    for (const auto& st : world.stations) {
        d = std::min(d, station_sdf(p, st));
    }
    return d;
}

bool is_collision_free(const Point2& p, const WorldState& world, double clearance) {
    if (!world.bounds.contains(p)) return false;
    return signed_clearance(p, world) >= clearance;
}

ApproachPose approach_point(const DockingStation& station, double standoff) {
    const Point2 offset{std::cos(station.approach_heading) * standoff,
                        std::sin(station.approach_heading) * standoff};
    return {station.position - offset, station.approach_heading};
}

}  // namespace usvplan
