#include "usvplan/svg_plot.hpp"

#include <cstdio>
#include <string>

namespace usvplan {

namespace {

/// Fixed-precision number formatting keeps the document byte-stable.
std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

}  // namespace

std::string render_plot(const MissionReport& report, const WorldState& world) {
    const double margin = 6.0;
    const double min_x = world.bounds.min.x;
    const double max_y = world.bounds.max.y;
    const double width = world.bounds.max.x - world.bounds.min.x + 2.0 * margin;
    const double height = max_y - world.bounds.min.y + 2.0 * margin;
    // World y grows upward, SVG y downward.
    auto sx = [&](double x) { return num(x - min_x + margin); };
    auto sy = [&](double y) { return num(max_y - y + margin); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(width) + " " +
           num(height) + "\" font-family=\"sans-serif\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" fill=\"#dcecf5\"/>\n";
    svg += "<rect x=\"" + sx(world.bounds.min.x) + "\" y=\"" + sy(world.bounds.max.y) +
           "\" width=\"" + num(world.bounds.max.x - world.bounds.min.x) + "\" height=\"" +
           num(world.bounds.max.y - world.bounds.min.y) +
           "\" fill=\"#eaf4fb\" stroke=\"#4a6572\" stroke-width=\"0.5\"/>\n";

    for (const auto& obs : world.obstacles) {
        if (const auto* circle = std::get_if<CircleObstacle>(&obs)) {
            svg += "<circle cx=\"" + sx(circle->center.x) + "\" cy=\"" + sy(circle->center.y) +
                   "\" r=\"" + num(circle->radius) + "\" fill=\"#9aa5ab\"/>\n";
        } else {
            svg += "<polygon points=\"";
            bool first = true;
            for (const auto& v : std::get<PolygonObstacle>(obs).vertices) {
                if (!first) svg += " ";
                svg += sx(v.x) + "," + sy(v.y);
                first = false;
            }
            svg += "\" fill=\"#9aa5ab\"/>\n";
        }
    }

    for (const auto& st : world.stations) {
        svg += "<polygon points=\"";
        bool first = true;
        for (const auto& corner : st.footprint()) {
            if (!first) svg += " ";
            svg += sx(corner.x) + "," + sy(corner.y);
            first = false;
        }
        svg += "\" fill=\"#5d4a42\" stroke=\"#33281f\" stroke-width=\"0.4\"/>\n";
        svg += "<text x=\"" + sx(st.position.x + st.width) + "\" y=\"" + sy(st.position.y) +
               "\" font-size=\"4\" fill=\"#33281f\">" + st.id + "</text>\n";
    }

    // Planned routes, dashed, one polyline per executed move.
    for (const auto& outcome : report.outcomes) {
        if (outcome.path_waypoints.size() < 2) continue;
        svg += "<polyline fill=\"none\" stroke=\"#c62828\" stroke-width=\"0.5\" "
               "stroke-dasharray=\"2,1.5\" points=\"";
        bool first = true;
        for (const auto& p : outcome.path_waypoints) {
            if (!first) svg += " ";
            svg += sx(p.x) + "," + sy(p.y);
            first = false;
        }
        svg += "\"/>\n";
    }

    // Planned approach waypoints as markers.
    for (const auto& wp : report.planned_waypoints) {
        svg += "<circle cx=\"" + sx(wp.position.x) + "\" cy=\"" + sy(wp.position.y) +
               "\" r=\"1.4\" fill=\"#c62828\"/>\n";
    }

    // Executed trajectory.
    if (report.trajectory.size() >= 2) {
        svg += "<polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"0.7\" points=\"";
        bool first = true;
        for (const auto& s : report.trajectory) {
            if (!first) svg += " ";
            svg += sx(s.position.x) + "," + sy(s.position.y);
            first = false;
        }
        svg += "\"/>\n";
    }
    if (!report.trajectory.empty()) {
        const auto& s0 = report.trajectory.front();
        svg += "<circle cx=\"" + sx(s0.position.x) + "\" cy=\"" + sy(s0.position.y) +
               "\" r=\"1.4\" fill=\"#2e7d32\"/>\n";
    }

    // Legend, pinned to the top-left corner of the document.
    svg += "<g font-size=\"4\" fill=\"#263238\">\n";
    svg += "<rect x=\"" + num(margin / 2) + "\" y=\"" + num(margin / 2) +
           "\" width=\"46\" height=\"15\" fill=\"#ffffff\" fill-opacity=\"0.85\" "
           "stroke=\"#4a6572\" stroke-width=\"0.3\"/>\n";
    svg += "<line x1=\"" + num(margin / 2 + 2) + "\" y1=\"" + num(margin / 2 + 4) + "\" x2=\"" +
           num(margin / 2 + 10) + "\" y2=\"" + num(margin / 2 + 4) +
           "\" stroke=\"#c62828\" stroke-width=\"0.5\" stroke-dasharray=\"2,1.5\"/>\n";
    svg += "<text x=\"" + num(margin / 2 + 12) + "\" y=\"" + num(margin / 2 + 5.3) +
           "\">planned route and waypoints</text>\n";
    svg += "<line x1=\"" + num(margin / 2 + 2) + "\" y1=\"" + num(margin / 2 + 9) + "\" x2=\"" +
           num(margin / 2 + 10) + "\" y2=\"" + num(margin / 2 + 9) +
           "\" stroke=\"#1565c0\" stroke-width=\"0.7\"/>\n";
    svg += "<text x=\"" + num(margin / 2 + 12) + "\" y=\"" + num(margin / 2 + 10.3) +
           "\">executed trajectory</text>\n";
    svg += "<text x=\"" + num(margin / 2 + 2) + "\" y=\"" + num(margin / 2 + 14.3) + "\">" +
           report.final_status + "</text>\n";
    svg += "</g>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace usvplan
