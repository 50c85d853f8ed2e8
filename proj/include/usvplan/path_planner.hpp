#pragma once

#include <cstdint>
#include <vector>

#include "usvplan/geometry.hpp"
#include "usvplan/world.hpp"

namespace usvplan {

/// Piecewise-linear route through free space.
struct Path {
    std::vector<Point2> waypoints;
    double total_length = 0.0;
};

/// Rasterized free/blocked map over the world bounds. A cell is blocked
/// when its center is not collision free at the configured clearance.
struct OccupancyGrid {
    int cols = 0;
    int rows = 0;
    double resolution = 1.0;
    Point2 origin;                 // world position of cell (0, 0) center
    std::vector<std::uint8_t> blocked;  // row-major, 1 = blocked

    bool is_blocked(int col, int row) const {
        if (col < 0 || col >= cols || row < 0 || row >= rows) return true;
        return blocked[static_cast<std::size_t>(row) * cols + col] != 0;
    }
    Point2 cell_center(int col, int row) const {
        return {origin.x + col * resolution, origin.y + row * resolution};
    }
    int col_of(double x) const { return static_cast<int>(std::floor((x - origin.x) / resolution + 0.5)); }
    int row_of(double y) const { return static_cast<int>(std::floor((y - origin.y) / resolution + 0.5)); }
};

OccupancyGrid build_occupancy_grid(const WorldState& world, double resolution, double clearance);

/// True if the straight segment [a, b] stays collision free, sampled
/// every `sample_step` meters plus both endpoints.
bool segment_collision_free(const Point2& a, const Point2& b, const WorldState& world,
                            double clearance, double sample_step);

/// 8-connected grid search from start to goal cell. Diagonal moves cost
/// sqrt(2) and are disallowed when either adjacent orthogonal cell is
/// blocked. Ties break on lower heuristic, then lower row-major index.
/// Returns the cell sequence, or empty if unreachable.
std::vector<std::pair<int, int>> astar(const OccupancyGrid& grid,
                                       std::pair<int, int> start,
                                       std::pair<int, int> goal);

/// Greedy shortcut pass: from each kept waypoint, jump to the farthest
/// later waypoint reachable by a collision-free straight segment.
Path shortcut_smooth(const Path& raw, const WorldState& world, double clearance,
                     double sample_step);

/// Plan a collision-free route from start to goal. Throws NoPathFound
/// when the goal is unreachable at the configured clearance.
Path plan_path(const Point2& start, const Point2& goal, const WorldState& world,
               double resolution, double clearance);

}  // namespace usvplan
