#pragma once

#include <string>

#include "usvplan/executor.hpp"
#include "usvplan/world.hpp"

namespace usvplan {

/// Render the world, planned waypoints (red markers), and executed
/// trajectory (blue line) as a standalone SVG. Numeric output uses fixed
/// precision so identical reports render identical bytes.
std::string render_plot(const MissionReport& report, const WorldState& world);

}  // namespace usvplan
