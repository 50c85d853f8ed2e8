#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "usvplan/geometry.hpp"
#include "usvplan/vessel.hpp"

namespace usvplan {

/// A dockable station. The footprint is an l x w rectangle centered on
/// position and rotated to approach_heading; the vessel must keep clear
/// of it while transiting.
struct DockingStation {
    std::string id;
    Point2 position;
    double z = 0.0;                // deck height datum, informational
    double length = 8.0;           // m, along approach_heading
    double width = 5.0;            // m, across approach_heading
    double height = 4.0;           // m, informational
    double approach_heading = 0.0; // rad, direction the vessel faces when docked

    /// Footprint corners in world coordinates, counterclockwise.
    std::array<Point2, 4> footprint() const;
};

struct CircleObstacle {
    Point2 center;
    double radius = 0.0;
};

/// Convex or concave simple polygon, vertices in order, implicitly closed.
struct PolygonObstacle {
    std::vector<Point2> vertices;
};

using Obstacle = std::variant<CircleObstacle, PolygonObstacle>;

/// Static environment: operating area, stations, obstacles, disturbance.
struct WorldState {
    Rect bounds;
    std::vector<DockingStation> stations;
    std::vector<Obstacle> obstacles;
    Disturbance disturbance;

    /// Station lookup by id; throws UnknownTarget if absent.
    const DockingStation& find_station(const std::string& id) const;
};

/// Signed distance from p to the nearest solid (obstacles and station
/// footprints; the area boundary is handled separately). Negative inside
/// a solid.
double signed_clearance(const Point2& p, const WorldState& world);

/// True if p lies inside the operating area and keeps at least
/// `clearance` meters from every solid. Boundaries count as free.
bool is_collision_free(const Point2& p, const WorldState& world, double clearance);

/// Pose the vessel should reach before docking: standoff meters back
/// from the station center along its approach heading, facing it.
struct ApproachPose {
    Point2 position;
    double heading = 0.0;
};

ApproachPose approach_point(const DockingStation& station, double standoff);

}  // namespace usvplan
