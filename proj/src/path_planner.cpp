#include "usvplan/path_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "usvplan/errors.hpp"

namespace usvplan {

OccupancyGrid build_occupancy_grid(const WorldState& world, double resolution, double clearance) {
    OccupancyGrid grid;
    grid.resolution = resolution;
    grid.cols = std::max(1, static_cast<int>(std::ceil((world.bounds.max.x - world.bounds.min.x) /
                                                       resolution)));
    grid.rows = std::max(1, static_cast<int>(std::ceil((world.bounds.max.y - world.bounds.min.y) /
                                                       resolution)));
    grid.origin = {world.bounds.min.x + resolution / 2.0, world.bounds.min.y + resolution / 2.0};
    grid.blocked.assign(static_cast<std::size_t>(grid.cols) * grid.rows, 0);
    for (int r = 0; r < grid.rows; ++r) {
        for (int c = 0; c < grid.cols; ++c) {
            if (!is_collision_free(grid.cell_center(c, r), world, clearance)) {
                grid.blocked[static_cast<std::size_t>(r) * grid.cols + c] = 1;
            }
        }
    }
    return grid;
}

bool segment_collision_free(const Point2& a, const Point2& b, const WorldState& world,
                            double clearance, double sample_step) {
    const double len = distance(a, b);
    const int samples = std::max(1, static_cast<int>(std::ceil(len / sample_step)));
    for (int i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) / samples;
        if (!is_collision_free(a + (b - a) * t, world, clearance)) return false;
    }
    return true;
}

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double octile(int c0, int r0, int c1, int r1) {
    const double dc = std::abs(c1 - c0);
    const double dr = std::abs(r1 - r0);
    return std::max(dc, dr) + (kSqrt2 - 1.0) * std::min(dc, dr);
}

}  // namespace

std::vector<std::pair<int, int>> astar(const OccupancyGrid& grid,
                                       std::pair<int, int> start,
                                       std::pair<int, int> goal) {
    const int cols = grid.cols;
    const int rows = grid.rows;
    auto index = [cols](int c, int r) { return static_cast<std::size_t>(r) * cols + c; };
    if (grid.is_blocked(start.first, start.second) || grid.is_blocked(goal.first, goal.second)) {
        return {};
    }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g(static_cast<std::size_t>(cols) * rows, inf);
    std::vector<std::int32_t> parent(static_cast<std::size_t>(cols) * rows, -1);
    std::vector<std::uint8_t> closed(static_cast<std::size_t>(cols) * rows, 0);

    // Queue entries: (f, h, cell index). Ties break on lower h, then on
    // lower row-major index, so expansion order is fully deterministic.
    using Entry = std::tuple<double, double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;

    const std::size_t start_idx = index(start.first, start.second);
    g[start_idx] = 0.0;
    open.emplace(octile(start.first, start.second, goal.first, goal.second),
                 octile(start.first, start.second, goal.first, goal.second), start_idx);

    static const int dc[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static const int dr[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    while (!open.empty()) {
        const auto [f, h, idx] = open.top();
        open.pop();
        (void)f;
        (void)h;
        if (closed[idx]) continue;
        closed[idx] = 1;
        const int c = static_cast<int>(idx % cols);
        const int r = static_cast<int>(idx / cols);
        if (c == goal.first && r == goal.second) break;

        for (int k = 0; k < 8; ++k) {
            const int nc = c + dc[k];
            const int nr = r + dr[k];
            if (grid.is_blocked(nc, nr)) continue;
            const bool diagonal = dc[k] != 0 && dr[k] != 0;
            // No corner cutting: a diagonal move needs both orthogonal
            // neighbors free.
            if (diagonal &&
                (grid.is_blocked(c + dc[k], r) || grid.is_blocked(c, r + dr[k]))) {
                continue;
            }
            const std::size_t nidx = index(nc, nr);
            if (closed[nidx]) continue;
            const double cost = g[idx] + (diagonal ? kSqrt2 : 1.0);
            if (cost < g[nidx]) {
                g[nidx] = cost;
                parent[nidx] = static_cast<std::int32_t>(idx);
                const double nh = octile(nc, nr, goal.first, goal.second);
                open.emplace(cost + nh, nh, nidx);
            }
        }
    }

    const std::size_t goal_idx = index(goal.first, goal.second);
    if (g[goal_idx] == inf) return {};
    std::vector<std::pair<int, int>> cells;
    for (std::int32_t i = static_cast<std::int32_t>(goal_idx); i >= 0; i = parent[i]) {
        cells.emplace_back(static_cast<int>(i % cols), static_cast<int>(i / cols));
        if (static_cast<std::size_t>(i) == start_idx) break;
    }
    std::reverse(cells.begin(), cells.end());
    return cells;
}

namespace {

double polyline_length(const std::vector<Point2>& pts) {
    double len = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
    return len;
}

}  // namespace

Path shortcut_smooth(const Path& raw, const WorldState& world, double clearance,
                     double sample_step) {
    if (raw.waypoints.size() <= 2) return raw;
    std::vector<Point2> kept;
    kept.push_back(raw.waypoints.front());
    std::size_t i = 0;
    while (i + 1 < raw.waypoints.size()) {
        std::size_t best = i + 1;
        for (std::size_t j = raw.waypoints.size() - 1; j > i + 1; --j) {
            if (segment_collision_free(raw.waypoints[i], raw.waypoints[j], world, clearance,
                                       sample_step)) {
                best = j;
                break;
            }
        }
        kept.push_back(raw.waypoints[best]);
        i = best;
    }
    return {kept, polyline_length(kept)};
}

Path plan_path(const Point2& start, const Point2& goal, const WorldState& world,
               double resolution, double clearance) {
    if (!is_collision_free(goal, world, clearance)) {
        throw NoPathFound("goal is not collision free at the configured clearance");
    }
    if (start == goal) return {{start}, 0.0};

    OccupancyGrid grid = build_occupancy_grid(world, resolution, clearance);
    auto clamp_cell = [&grid](int c, int r) {
        return std::make_pair(std::clamp(c, 0, grid.cols - 1), std::clamp(r, 0, grid.rows - 1));
    };
    const auto start_cell = clamp_cell(grid.col_of(start.x), grid.row_of(start.y));
    const auto goal_cell = clamp_cell(grid.col_of(goal.x), grid.row_of(goal.y));

    // The vessel is physically at start and the goal point itself is
    // free; rasterization must not wall off either endpoint's own cell.
    grid.blocked[static_cast<std::size_t>(start_cell.second) * grid.cols + start_cell.first] = 0;
    grid.blocked[static_cast<std::size_t>(goal_cell.second) * grid.cols + goal_cell.first] = 0;

    const auto cells = astar(grid, start_cell, goal_cell);
    if (cells.empty()) {
        throw NoPathFound("no route to goal at the configured clearance");
    }

    std::vector<Point2> pts;
    pts.push_back(start);
    for (const auto& [c, r] : cells) {
        const Point2 p = grid.cell_center(c, r);
        if (distance(p, pts.back()) > 1e-9) pts.push_back(p);
    }
    if (distance(goal, pts.back()) > 1e-9) {
        pts.push_back(goal);
    } else if (pts.size() > 1) {
        pts.back() = goal;
    }

    const Path raw{pts, polyline_length(pts)};
    Path smooth = shortcut_smooth(raw, world, clearance, resolution / 2.0);
    if (smooth.total_length > raw.total_length) smooth = raw;
    return smooth;
}

}  // namespace usvplan
